#include "klein/mesh.hpp"

#include "klein/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <numeric>
#include <queue>

namespace klein {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

double mesh_diameter(const std::vector<Vec3>& vs) {
    if (vs.empty()) return 0.0;
    Vec3 lo = vs[0], hi = vs[0];
    for (const Vec3& v : vs) {
        lo = {std::min(lo.x, v.x), std::min(lo.y, v.y), std::min(lo.z, v.z)};
        hi = {std::max(hi.x, v.x), std::max(hi.y, v.y), std::max(hi.z, v.z)};
    }
    return (hi - lo).norm();
}

} // namespace

TriangleMesh tessellate(const ParametricSurface& s, int nu, int nv,
                        double margin) {
    if (nu < 3 || nv < 3)
        throw ParameterOutOfRange("tessellation needs nu, nv >= 3");
    const bool needs_even_nv =
        s.identification && s.identification->v_sigma == -1 &&
        std::abs(s.identification->v_tau) > 1e-12;
    if (needs_even_nv && nv % 2 != 0)
        ++nv; // v_tau = pi must land on a grid node for exact seam pairing

    const double ulen = s.domain_u.length();
    const double ulo =
        s.domain_u.lo + (s.domain_u.open_lo ? margin * ulen : 0.0);
    const double uhi =
        s.domain_u.hi - (s.domain_u.open_hi ? margin * ulen : 0.0);

    TriangleMesh m;
    m.provenance = {s.name, nu, nv, margin, false, false};
    m.grid_u.resize(nu + 1);
    m.grid_v.resize(nv + 1);
    for (int i = 0; i <= nu; ++i)
        m.grid_u[i] = ulo + (uhi - ulo) * static_cast<double>(i) / nu;
    // Keep closed endpoints exact.
    m.grid_u[0] = ulo;
    m.grid_u[nu] = uhi;
    for (int j = 0; j <= nv; ++j)
        m.grid_v[j] = kTwoPi * static_cast<double>(j) / nv;

    m.vertices.reserve(static_cast<size_t>(nu + 1) * (nv + 1));
    for (int i = 0; i <= nu; ++i)
        for (int j = 0; j <= nv; ++j)
            m.vertices.push_back(surface_eval_raw(s, m.grid_u[i], m.grid_v[j]));

    m.triangles.reserve(static_cast<size_t>(nu) * nv * 2);
    auto vid = [nv](int i, int j) { return i * (nv + 1) + j; };
    for (int i = 0; i < nu; ++i) {
        for (int j = 0; j < nv; ++j) {
            m.triangles.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)});
            m.triangles.push_back({vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)});
        }
    }
    return m;
}

TriangleMesh weld(const TriangleMesh& m, const ParametricSurface& s,
                  double tol) {
    const int nu = m.provenance.nu;
    const int nv = m.provenance.nv;
    if (m.provenance.welded || nu <= 0 ||
        m.vertices.size() != static_cast<size_t>(nu + 1) * (nv + 1))
        throw ParameterOutOfRange("weld expects an unwelded grid tessellation");

    const int n = static_cast<int>(m.vertices.size());
    UnionFind uf(n);
    auto vid = [nv](int i, int j) { return i * (nv + 1) + j; };

    // v-periodicity: row nv coincides with row 0.
    for (int i = 0; i <= nu; ++i)
        uf.unite(vid(i, 0), vid(i, nv));

    // u-seam under the identification map, paired by grid index.
    const bool u_closed = !s.domain_u.open_lo && !s.domain_u.open_hi;
    const double seam_guard = std::max(1e3 * tol, 1e-9 * mesh_diameter(m.vertices));
    if (s.identification && u_closed && !s.truncated_u) {
        const IdentificationMap& id = *s.identification;
        const double step = kTwoPi / nv;
        const long tau_steps = std::lround(id.v_tau / step);
        if (std::abs(id.v_tau - tau_steps * step) > 1e-9)
            throw InconsistentSeam("identification v_tau not on the theta grid");
        for (int j = 0; j < nv; ++j) {
            long j2 = (id.v_sigma * j + tau_steps) % nv;
            if (j2 < 0) j2 += nv;
            const int a = vid(0, j);
            const int b = vid(nu, static_cast<int>(j2));
            if ((m.vertices[a] - m.vertices[b]).norm() > seam_guard)
                throw InconsistentSeam(
                    "seam-paired vertices too far apart; wrong identification");
            uf.unite(a, b);
        }
    }

    // Distance fallback for surfaces without an identification map. It must
    // not run on the immersions: self-intersection points coincide in space
    // but are distinct on the surface, and merging them pinches the mesh.
    if (tol > 0.0 && !s.identification) {
        std::map<std::array<long long, 3>, std::vector<int>> cells;
        auto cell_of = [&](const Vec3& v) {
            return std::array<long long, 3>{
                static_cast<long long>(std::floor(v.x / tol)),
                static_cast<long long>(std::floor(v.y / tol)),
                static_cast<long long>(std::floor(v.z / tol))};
        };
        for (int i = 0; i < n; ++i) cells[cell_of(m.vertices[i])].push_back(i);
        for (int i = 0; i < n; ++i) {
            const auto c = cell_of(m.vertices[i]);
            for (long long dx = -1; dx <= 1; ++dx)
                for (long long dy = -1; dy <= 1; ++dy)
                    for (long long dz = -1; dz <= 1; ++dz) {
                        auto it = cells.find({c[0] + dx, c[1] + dy, c[2] + dz});
                        if (it == cells.end()) continue;
                        for (int k : it->second)
                            if (k > i &&
                                (m.vertices[i] - m.vertices[k]).norm() <= tol)
                                uf.unite(i, k);
                    }
        }
    }

    // Re-index: representative keeps its first-seen position.
    std::vector<int> remap(n, -1);
    TriangleMesh out;
    out.provenance = m.provenance;
    out.provenance.welded = true;
    for (int i = 0; i < n; ++i) {
        const int root = uf.find(i);
        if (remap[root] < 0) {
            remap[root] = static_cast<int>(out.vertices.size());
            out.vertices.push_back(m.vertices[root]);
        }
        remap[i] = remap[root];
    }
    for (const auto& t : m.triangles) {
        const std::array<int, 3> r{remap[t[0]], remap[t[1]], remap[t[2]]};
        if (r[0] == r[1] || r[1] == r[2] || r[0] == r[2]) continue;
        out.triangles.push_back(r);
    }
    return out;
}

MeshTopologyReport euler_characteristic(const TriangleMesh& m) {
    std::map<std::pair<int, int>, int> edge_count;
    for (const auto& t : m.triangles) {
        for (int e = 0; e < 3; ++e) {
            int a = t[e], b = t[(e + 1) % 3];
            if (a > b) std::swap(a, b);
            ++edge_count[{a, b}];
        }
    }
    MeshTopologyReport rep;
    rep.V = static_cast<long long>(m.vertices.size());
    rep.F = static_cast<long long>(m.triangles.size());
    rep.E = static_cast<long long>(edge_count.size());
    rep.euler_characteristic = rep.V - rep.E + rep.F;
    bool manifold = true;
    std::vector<std::pair<int, int>> boundary;
    for (const auto& [edge, count] : edge_count) {
        if (count == 1) boundary.push_back(edge);
        if (count > 2) manifold = false;
    }
    rep.boundary_edge_count = static_cast<long long>(boundary.size());
    rep.watertight = manifold && boundary.empty();

    // Boundary loops: connected components of the boundary-edge graph.
    if (!boundary.empty()) {
        std::map<int, std::vector<int>> adj;
        for (size_t e = 0; e < boundary.size(); ++e) {
            adj[boundary[e].first].push_back(static_cast<int>(e));
            adj[boundary[e].second].push_back(static_cast<int>(e));
        }
        std::vector<bool> seen(boundary.size(), false);
        for (size_t e0 = 0; e0 < boundary.size(); ++e0) {
            if (seen[e0]) continue;
            ++rep.boundary_loops;
            std::queue<int> q;
            q.push(static_cast<int>(e0));
            seen[e0] = true;
            while (!q.empty()) {
                const int e = q.front();
                q.pop();
                for (int vert : {boundary[e].first, boundary[e].second})
                    for (int other : adj[vert])
                        if (!seen[other]) {
                            seen[other] = true;
                            q.push(other);
                        }
            }
        }
    }

    // Orientation propagation over manifold interior edges.
    if (manifold) {
        rep.orientability_defined = true;
        std::map<std::pair<int, int>, std::vector<std::pair<int, bool>>> incident;
        for (size_t f = 0; f < m.triangles.size(); ++f) {
            const auto& t = m.triangles[f];
            for (int e = 0; e < 3; ++e) {
                int a = t[e], b = t[(e + 1) % 3];
                const bool forward = a < b;
                if (a > b) std::swap(a, b);
                incident[{a, b}].push_back({static_cast<int>(f), forward});
            }
        }
        std::vector<int> sign(m.triangles.size(), 0);
        bool orientable = true;
        for (size_t f0 = 0; f0 < m.triangles.size() && orientable; ++f0) {
            if (sign[f0] != 0) continue;
            sign[f0] = 1;
            std::queue<int> q;
            q.push(static_cast<int>(f0));
            while (!q.empty() && orientable) {
                const int f = q.front();
                q.pop();
                const auto& t = m.triangles[f];
                for (int e = 0; e < 3; ++e) {
                    int a = t[e], b = t[(e + 1) % 3];
                    const bool forward = a < b;
                    if (a > b) std::swap(a, b);
                    for (const auto& [g, gforward] : incident[{a, b}]) {
                        if (g == f) continue;
                        // Consistent orientation traverses a shared edge in
                        // opposite directions.
                        const int want =
                            (gforward != forward) ? sign[f] : -sign[f];
                        if (sign[g] == 0) {
                            sign[g] = want;
                            q.push(g);
                        } else if (sign[g] != want) {
                            orientable = false;
                        }
                    }
                }
            }
        }
        rep.orientable = orientable;
    }
    return rep;
}

bool orientability(const TriangleMesh& m) {
    const MeshTopologyReport rep = euler_characteristic(m);
    if (!rep.watertight)
        throw NotWatertight("orientability requires a watertight mesh");
    return rep.orientable;
}

TriangleMesh compute_normals(TriangleMesh m) {
    m.normals.assign(m.vertices.size(), Vec3{});
    for (const auto& t : m.triangles) {
        const Vec3 n = (m.vertices[t[1]] - m.vertices[t[0]])
                           .cross(m.vertices[t[2]] - m.vertices[t[0]]);
        for (int k = 0; k < 3; ++k) m.normals[t[k]] = m.normals[t[k]] + n;
    }
    for (Vec3& n : m.normals) {
        const double len = n.norm();
        if (len > 0.0) n = n * (1.0 / len);
        else n = {0.0, 0.0, 1.0};
    }
    const MeshTopologyReport rep = euler_characteristic(m);
    if (rep.orientability_defined && !rep.orientable)
        m.provenance.orientation_conflict = true;
    return m;
}

} // namespace klein
