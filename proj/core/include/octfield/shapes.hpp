#pragma once

#include "octfield/mesh.hpp"

namespace octfield::shapes {

// Watertight axis-aligned box (12 triangles, outward normals).
TriMesh make_box(const Vec3& lo, const Vec3& hi);

// Icosphere: subdivided icosahedron projected to radius r (watertight).
TriMesh make_icosphere(double radius, int subdivisions, const Vec3& center = {0, 0, 0});

// Torus around the z axis (watertight for segments >= 3).
TriMesh make_torus(double major_radius, double minor_radius, int major_segments,
                   int minor_segments, const Vec3& center = {0, 0, 0});

// Union of boxes as disjoint shells (watertight iff the boxes do not touch).
TriMesh merge(const std::vector<TriMesh>& parts);

}  // namespace octfield::shapes
