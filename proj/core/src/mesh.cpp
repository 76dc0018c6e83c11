#include "octfield/mesh.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "octfield/errors.hpp"
#include "octfield/rng.hpp"

namespace octfield {

Box3 TriMesh::bounds() const {
    Box3 b = Box3::empty();
    for (const Vec3& v : vertices) b.expand(v);
    return b;
}

double TriMesh::face_area(int f) const {
    const auto& t = faces[f];
    Vec3 e1 = vertices[t[1]] - vertices[t[0]];
    Vec3 e2 = vertices[t[2]] - vertices[t[0]];
    return 0.5 * e1.cross(e2).norm();
}

double TriMesh::total_area() const {
    double a = 0.0;
    for (int f = 0; f < (int)faces.size(); ++f) a += face_area(f);
    return a;
}

Vec3 TriMesh::face_point(int f, double u, double v) const {
    const auto& t = faces[f];
    return vertices[t[0]] * (1.0 - u - v) + vertices[t[1]] * u + vertices[t[2]] * v;
}

int TriMesh::compute_normals() {
    face_normals.clear();
    face_normals.reserve(faces.size());
    std::vector<std::array<int, 3>> kept;
    kept.reserve(faces.size());
    int dropped = 0;
    for (const auto& t : faces) {
        Vec3 e1 = vertices[t[1]] - vertices[t[0]];
        Vec3 e2 = vertices[t[2]] - vertices[t[0]];
        Vec3 n = e1.cross(e2);
        double len = n.norm();
        if (len <= 1e-30) {
            ++dropped;
            continue;
        }
        kept.push_back(t);
        face_normals.push_back(n / len);
    }
    faces = std::move(kept);
    dropped_degenerate += dropped;
    return dropped;
}

namespace {

struct LineReader {
    std::istream& in;
    long line_no = 0;
    bool next(std::string& out) {
        while (std::getline(in, out)) {
            ++line_no;
            if (!out.empty() && out.back() == '\r') out.pop_back();
            size_t i = out.find_first_not_of(" \t");
            if (i == std::string::npos) continue;
            if (out[i] == '#') continue;
            return true;
        }
        return false;
    }
};

double parse_double(const std::string& tok, long line) {
    char* end = nullptr;
    double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0')
        throw FormatError("cannot parse number '" + tok + "'", line);
    if (!std::isfinite(v)) throw FormatError("non-finite coordinate '" + tok + "'", line);
    return v;
}

long parse_int(const std::string& tok, long line) {
    char* end = nullptr;
    long v = std::strtol(tok.c_str(), &end, 10);
    if (end == tok.c_str()) throw FormatError("cannot parse integer '" + tok + "'", line);
    return v;
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> toks;
    std::istringstream iss(s);
    std::string t;
    while (iss >> t) toks.push_back(t);
    return toks;
}

void push_polygon(TriMesh& mesh, const std::vector<int>& idx, long line) {
    if (idx.size() < 3) throw FormatError("face with fewer than 3 vertices", line);
    for (int i : idx)
        if (i < 0 || i >= (int)mesh.vertices.size())
            throw FormatError("face index " + std::to_string(i) + " out of range", line);
    for (size_t k = 1; k + 1 < idx.size(); ++k)
        mesh.faces.push_back({idx[0], idx[k], idx[k + 1]});
}

TriMesh load_obj(std::istream& in) {
    TriMesh mesh;
    LineReader rd{in};
    std::string line;
    while (rd.next(line)) {
        auto toks = split_ws(line);
        if (toks.empty()) continue;
        if (toks[0] == "v") {
            if (toks.size() < 4) throw FormatError("vertex needs 3 coordinates", rd.line_no);
            mesh.vertices.push_back({parse_double(toks[1], rd.line_no),
                                     parse_double(toks[2], rd.line_no),
                                     parse_double(toks[3], rd.line_no)});
        } else if (toks[0] == "f") {
            std::vector<int> idx;
            for (size_t i = 1; i < toks.size(); ++i) {
                // "v", "v/vt", "v/vt/vn", "v//vn" all start with the vertex index
                std::string head = toks[i].substr(0, toks[i].find('/'));
                long v = parse_int(head, rd.line_no);
                // OBJ allows negative (relative) indices
                idx.push_back(v > 0 ? (int)(v - 1) : (int)(mesh.vertices.size() + v));
            }
            push_polygon(mesh, idx, rd.line_no);
        }
        // other directives (vn, vt, o, g, usemtl, ...) are ignored
    }
    return mesh;
}

TriMesh load_off(std::istream& in) {
    TriMesh mesh;
    LineReader rd{in};
    std::string line;
    if (!rd.next(line)) throw FormatError("empty OFF file", rd.line_no);
    {
        auto toks = split_ws(line);
        if (toks.empty() || toks[0] != "OFF") throw FormatError("missing OFF header", rd.line_no);
        // counts may follow on the same line
        if (toks.size() >= 3) {
            line = line.substr(line.find("OFF") + 3);
            if (split_ws(line).empty() && !rd.next(line))
                throw FormatError("missing OFF counts", rd.line_no);
        } else if (!rd.next(line)) {
            throw FormatError("missing OFF counts", rd.line_no);
        }
    }
    auto counts = split_ws(line);
    if (counts.size() < 2) throw FormatError("bad OFF counts", rd.line_no);
    long nv = parse_int(counts[0], rd.line_no);
    long nf = parse_int(counts[1], rd.line_no);
    for (long i = 0; i < nv; ++i) {
        if (!rd.next(line)) throw FormatError("unexpected end of OFF vertices", rd.line_no);
        auto toks = split_ws(line);
        if (toks.size() < 3) throw FormatError("vertex needs 3 coordinates", rd.line_no);
        mesh.vertices.push_back({parse_double(toks[0], rd.line_no),
                                 parse_double(toks[1], rd.line_no),
                                 parse_double(toks[2], rd.line_no)});
    }
    for (long i = 0; i < nf; ++i) {
        if (!rd.next(line)) throw FormatError("unexpected end of OFF faces", rd.line_no);
        auto toks = split_ws(line);
        if (toks.empty()) throw FormatError("bad OFF face", rd.line_no);
        long k = parse_int(toks[0], rd.line_no);
        if ((long)toks.size() < k + 1) throw FormatError("OFF face is short", rd.line_no);
        std::vector<int> idx;
        for (long j = 0; j < k; ++j) idx.push_back((int)parse_int(toks[1 + j], rd.line_no));
        push_polygon(mesh, idx, rd.line_no);
    }
    return mesh;
}

TriMesh load_ply(std::istream& in) {
    LineReader rd{in};
    std::string line;
    if (!rd.next(line) || split_ws(line)[0] != "ply")
        throw FormatError("missing ply header", rd.line_no);

    long nv = -1, nf = -1;
    int xi = -1, yi = -1, zi = -1;
    int vprops = 0;
    std::string current_element;
    bool ascii = false;
    while (rd.next(line)) {
        auto toks = split_ws(line);
        if (toks[0] == "format") {
            if (toks.size() < 2 || toks[1] != "ascii")
                throw FormatError("only ascii PLY is supported", rd.line_no);
            ascii = true;
        } else if (toks[0] == "element") {
            if (toks.size() < 3) throw FormatError("bad element line", rd.line_no);
            current_element = toks[1];
            if (toks[1] == "vertex") nv = parse_int(toks[2], rd.line_no);
            if (toks[1] == "face") nf = parse_int(toks[2], rd.line_no);
        } else if (toks[0] == "property" && current_element == "vertex") {
            if (toks.size() >= 3 && toks[1] != "list") {
                if (toks[2] == "x") xi = vprops;
                if (toks[2] == "y") yi = vprops;
                if (toks[2] == "z") zi = vprops;
                ++vprops;
            }
        } else if (toks[0] == "end_header") {
            break;
        }
    }
    if (!ascii) throw FormatError("only ascii PLY is supported", rd.line_no);
    if (nv < 0 || nf < 0 || xi < 0 || yi < 0 || zi < 0)
        throw FormatError("PLY header is missing vertex/face declarations", rd.line_no);

    TriMesh mesh;
    for (long i = 0; i < nv; ++i) {
        if (!rd.next(line)) throw FormatError("unexpected end of PLY vertices", rd.line_no);
        auto toks = split_ws(line);
        if ((int)toks.size() < vprops) throw FormatError("short vertex row", rd.line_no);
        mesh.vertices.push_back({parse_double(toks[xi], rd.line_no),
                                 parse_double(toks[yi], rd.line_no),
                                 parse_double(toks[zi], rd.line_no)});
    }
    for (long i = 0; i < nf; ++i) {
        if (!rd.next(line)) throw FormatError("unexpected end of PLY faces", rd.line_no);
        auto toks = split_ws(line);
        long k = parse_int(toks[0], rd.line_no);
        if ((long)toks.size() < k + 1) throw FormatError("PLY face is short", rd.line_no);
        std::vector<int> idx;
        for (long j = 0; j < k; ++j) idx.push_back((int)parse_int(toks[1 + j], rd.line_no));
        push_polygon(mesh, idx, rd.line_no);
    }
    return mesh;
}

std::string lower_ext(const std::string& path) {
    size_t dot = path.find_last_of('.');
    if (dot == std::string::npos) return "";
    std::string e = path.substr(dot + 1);
    std::transform(e.begin(), e.end(), e.begin(), [](unsigned char c) { return std::tolower(c); });
    return e;
}

}  // namespace

TriMesh load_mesh(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open mesh file: " + path);
    std::string ext = lower_ext(path);
    TriMesh mesh;
    if (ext == "obj")
        mesh = load_obj(in);
    else if (ext == "off")
        mesh = load_off(in);
    else if (ext == "ply")
        mesh = load_ply(in);
    else
        throw FormatError("unsupported mesh format '." + ext + "' for " + path);
    for (const Vec3& v : mesh.vertices)
        if (!v.finite()) throw FormatError("non-finite vertex in " + path);
    if (mesh.faces.empty()) throw DomainError("mesh has no faces: " + path);
    mesh.compute_normals();
    if (mesh.faces.empty()) throw DomainError("mesh has only degenerate faces: " + path);
    return mesh;
}

void save_obj(const TriMesh& mesh, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write mesh file: " + path);
    char buf[128];
    for (const Vec3& v : mesh.vertices) {
        std::snprintf(buf, sizeof(buf), "v %.17g %.17g %.17g\n", v.x, v.y, v.z);
        out << buf;
    }
    for (const auto& f : mesh.faces) {
        std::snprintf(buf, sizeof(buf), "f %d %d %d\n", f[0] + 1, f[1] + 1, f[2] + 1);
        out << buf;
    }
    if (!out) throw IoError("write failed: " + path);
}

TriMesh normalize_unit_sphere(const TriMesh& mesh) {
    if (mesh.vertices.empty()) throw DomainError("cannot normalize an empty mesh");
    Box3 b = mesh.bounds();
    Vec3 c = b.center();
    double r = 0.0;
    for (const Vec3& v : mesh.vertices) r = std::max(r, (v - c).norm());
    if (r <= 0.0) throw DomainError("degenerate mesh: all vertices coincide");
    TriMesh out = mesh;
    for (Vec3& v : out.vertices) v = (v - c) / r;
    out.compute_normals();
    return out;
}

std::vector<SurfaceSample> sample_surface(const TriMesh& mesh, int count, uint64_t seed) {
    if (count < 1) throw DomainError("sample count must be >= 1");
    if (mesh.faces.empty()) throw DomainError("cannot sample an empty mesh");

    // cumulative area table for O(log n) face selection
    std::vector<double> cum(mesh.faces.size());
    double acc = 0.0;
    for (size_t f = 0; f < mesh.faces.size(); ++f) {
        acc += mesh.face_area((int)f);
        cum[f] = acc;
    }
    if (acc <= 0.0) throw DomainError("mesh has zero total area");

    Rng rng(mix_seed(seed, 0x53414d50ull));  // "SAMP"
    std::vector<SurfaceSample> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        double t = rng.uniform() * acc;
        size_t f = std::lower_bound(cum.begin(), cum.end(), t) - cum.begin();
        if (f >= mesh.faces.size()) f = mesh.faces.size() - 1;
        // uniform point in triangle: P = (1-sqrt(r1)) A + sqrt(r1)(1-r2) B + sqrt(r1) r2 C
        double su = std::sqrt(rng.uniform());
        double r2 = rng.uniform();
        out.push_back({mesh.face_point((int)f, su * (1.0 - r2), su * r2),
                       mesh.face_normals[f], (int)f});
    }
    return out;
}

uint64_t mesh_hash(const TriMesh& mesh) {
    uint64_t h = 1469598103934665603ull;
    auto feed = [&h](const void* p, size_t n) {
        const unsigned char* b = static_cast<const unsigned char*>(p);
        for (size_t i = 0; i < n; ++i) {
            h ^= b[i];
            h *= 1099511628211ull;
        }
    };
    for (const Vec3& v : mesh.vertices) feed(&v.x, 3 * sizeof(double));
    for (const auto& f : mesh.faces) feed(f.data(), 3 * sizeof(int));
    return h;
}

}  // namespace octfield
