#pragma once

#include "klein/surface.hpp"
#include "klein/vec.hpp"

#include <array>
#include <string>
#include <utility>
#include <vector>

namespace klein {

struct MeshProvenance {
    std::string surface;
    int nu = 0;
    int nv = 0;
    double margin = 0.0;
    bool welded = false;
    bool orientation_conflict = false; // set by compute_normals on Klein meshes
};

struct TriangleMesh {
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> triangles;
    std::vector<Vec3> normals; // empty, or one per vertex
    MeshProvenance provenance;
    // Parameter-grid samples; valid on unwelded tessellations only.
    std::vector<double> grid_u;
    std::vector<double> grid_v;
};

struct MeshTopologyReport {
    long long V = 0;
    long long E = 0;
    long long F = 0;
    long long euler_characteristic = 0;
    long long boundary_edge_count = 0;
    int boundary_loops = 0;
    bool watertight = false;
    bool orientable = false;
    bool orientability_defined = false; // false when non-manifold edges exist
};

struct IntersectionReport {
    long long intersecting_pairs = 0;
    long long pairs_tested = 0;
    std::vector<std::pair<int, int>> pairs; // sorted (i < j) triangle pairs
    std::vector<std::pair<Vec3, Vec3>> sample_segments;
};

// Samples an (nu+1) x (nv+1) grid over the margin-clipped domain (open u-ends
// are clipped by margin * length, closed ends are sampled exactly) and emits
// two triangles per cell. When the identification needs v_tau to land on grid
// nodes, nv is bumped to the next even value and recorded in provenance.
TriangleMesh tessellate(const ParametricSurface& s, int nu, int nv,
                        double margin = 1e-3);

// Merges seam vertices paired exactly in parameter space (v-periodicity and
// the identification map) plus any vertices closer than tol, re-indexes, and
// drops degenerate triangles.
TriangleMesh weld(const TriangleMesh& m, const ParametricSurface& s,
                  double tol = 1e-9);

MeshTopologyReport euler_characteristic(const TriangleMesh& m);

// Throws NotWatertight when the mesh has boundary edges.
bool orientability(const TriangleMesh& m);

// Area-weighted per-vertex normals.
TriangleMesh compute_normals(TriangleMesh m);

IntersectionReport self_intersections(const TriangleMesh& m,
                                      double cell_size = 0.0);

// All-pairs oracle; same exclusion and test as the spatial-hash path.
IntersectionReport self_intersections_brute(const TriangleMesh& m);

} // namespace klein
