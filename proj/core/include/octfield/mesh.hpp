#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "octfield/vec3.hpp"

namespace octfield {

// Indexed triangle surface with per-face unit normals.
struct TriMesh {
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> faces;
    std::vector<Vec3> face_normals;  // derived, unit length
    int dropped_degenerate = 0;      // zero-area faces removed at load

    bool empty() const { return faces.empty(); }
    Box3 bounds() const;
    double face_area(int f) const;
    double total_area() const;
    Vec3 face_point(int f, double u, double v) const;  // barycentric-ish corner weights

    // Recomputes face_normals, dropping zero-area faces. Returns dropped count.
    int compute_normals();
};

// A point on the surface carrying the normal of the face it was drawn from.
struct SurfaceSample {
    Vec3 position;
    Vec3 normal;
    int face_id = -1;
};

// Reads an ASCII OBJ/OFF/PLY triangle mesh (non-triangle faces are fan-split).
// Throws FormatError with a line number on parse failure, DomainError when the
// file contains no faces.
TriMesh load_mesh(const std::string& path);

// Native save format. Doubles are written with 17 significant digits so a
// save/load roundtrip is bit-exact.
void save_obj(const TriMesh& mesh, const std::string& path);

// Translates the bounding-box center to the origin and scales by the maximum
// vertex distance from it, so max |v| = 1. Idempotent.
TriMesh normalize_unit_sphere(const TriMesh& mesh);

// Area-proportional random sampling over faces, deterministic for fixed seed.
std::vector<SurfaceSample> sample_surface(const TriMesh& mesh, int count, uint64_t seed);

// FNV-1a over the vertex and face payload; used to key cached artifacts.
uint64_t mesh_hash(const TriMesh& mesh);

}  // namespace octfield
