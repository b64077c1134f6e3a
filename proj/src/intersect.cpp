#include "klein/mesh.hpp"

#include "klein/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <unordered_set>

namespace klein {

namespace {

struct TriTriResult {
    bool intersects = false;
    bool has_segment = false;
    Vec3 seg_a, seg_b;
};

// Moeller-style interval test on the intersection line of the two supporting
// planes. Grazing contacts shorter than eps are not counted; coplanar pairs
// count only on proper 2D overlap.
TriTriResult tri_tri_intersect(const Vec3* t1, const Vec3* t2, double eps) {
    TriTriResult res;
    const Vec3 n1 = (t1[1] - t1[0]).cross(t1[2] - t1[0]);
    const Vec3 n2 = (t2[1] - t2[0]).cross(t2[2] - t2[0]);

    double d2[3], d1[3];
    for (int i = 0; i < 3; ++i) {
        d2[i] = n2.dot(t1[i] - t2[0]);
        if (std::abs(d2[i]) < eps) d2[i] = 0.0;
    }
    if ((d2[0] > 0 && d2[1] > 0 && d2[2] > 0) ||
        (d2[0] < 0 && d2[1] < 0 && d2[2] < 0))
        return res;
    for (int i = 0; i < 3; ++i) {
        d1[i] = n1.dot(t2[i] - t1[0]);
        if (std::abs(d1[i]) < eps) d1[i] = 0.0;
    }
    if ((d1[0] > 0 && d1[1] > 0 && d1[2] > 0) ||
        (d1[0] < 0 && d1[1] < 0 && d1[2] < 0))
        return res;

    const bool coplanar =
        d2[0] == 0.0 && d2[1] == 0.0 && d2[2] == 0.0;
    if (coplanar) {
        // Project onto the dominant axis of the shared plane.
        const Vec3 an{std::abs(n1.x), std::abs(n1.y), std::abs(n1.z)};
        int ax = 0, ay = 1;
        if (an.x >= an.y && an.x >= an.z) { ax = 1; ay = 2; }
        else if (an.y >= an.x && an.y >= an.z) { ax = 0; ay = 2; }
        auto px = [&](const Vec3& p) { return ax == 0 ? p.x : (ax == 1 ? p.y : p.z); };
        auto py = [&](const Vec3& p) { return ay == 1 ? p.y : p.z; };
        auto inside = [&](const Vec3* tri, const Vec3& p) {
            double sign = 0.0;
            for (int e = 0; e < 3; ++e) {
                const Vec3& a = tri[e];
                const Vec3& b = tri[(e + 1) % 3];
                const double c = (px(b) - px(a)) * (py(p) - py(a)) -
                                 (py(b) - py(a)) * (px(p) - px(a));
                if (std::abs(c) < eps) return false; // on an edge: not proper
                if (sign == 0.0) sign = c;
                else if (c * sign < 0.0) return false;
            }
            return true;
        };
        auto cross2 = [&](const Vec3& a, const Vec3& b, const Vec3& p) {
            return (px(b) - px(a)) * (py(p) - py(a)) -
                   (py(b) - py(a)) * (px(p) - px(a));
        };
        for (int i = 0; i < 3; ++i)
            if (inside(t2, t1[i]) || inside(t1, t2[i])) {
                res.intersects = true;
                return res;
            }
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                const Vec3 &a = t1[i], &b = t1[(i + 1) % 3];
                const Vec3 &c = t2[j], &d = t2[(j + 1) % 3];
                const double c1 = cross2(a, b, c), c2 = cross2(a, b, d);
                const double c3 = cross2(c, d, a), c4 = cross2(c, d, b);
                if (c1 * c2 < -eps * eps && c3 * c4 < -eps * eps) {
                    res.intersects = true; // proper edge crossing
                    return res;
                }
            }
        return res;
    }

    // Interval of each triangle on the plane-intersection line.
    const Vec3 dir = n1.cross(n2);
    auto interval = [&](const Vec3* tri, const double* d, double& lo,
                        double& hi, Vec3& plo, Vec3& phi) -> bool {
        Vec3 pts[2];
        int count = 0;
        for (int e = 0; e < 3 && count < 2; ++e) {
            const int i = e, j = (e + 1) % 3;
            if (d[i] == 0.0 && d[j] == 0.0) {
                pts[0] = tri[i];
                pts[1] = tri[j];
                count = 2;
                break;
            }
            if ((d[i] <= 0.0 && d[j] >= 0.0) || (d[i] >= 0.0 && d[j] <= 0.0)) {
                if (d[i] == d[j]) continue;
                const double s = d[i] / (d[i] - d[j]);
                pts[count++] = tri[i] + s * (tri[j] - tri[i]);
            }
        }
        if (count == 0) return false;
        if (count == 1) pts[1] = pts[0];
        double a = dir.dot(pts[0]), b = dir.dot(pts[1]);
        if (a <= b) { lo = a; hi = b; plo = pts[0]; phi = pts[1]; }
        else { lo = b; hi = a; plo = pts[1]; phi = pts[0]; }
        return true;
    };

    double lo1, hi1, lo2, hi2;
    Vec3 p1lo, p1hi, p2lo, p2hi;
    if (!interval(t1, d2, lo1, hi1, p1lo, p1hi)) return res;
    if (!interval(t2, d1, lo2, hi2, p2lo, p2hi)) return res;

    const double lo = std::max(lo1, lo2);
    const double hi = std::min(hi1, hi2);
    const double dn = dir.norm();
    if (hi - lo <= eps * std::max(dn, eps))
        return res; // disjoint or grazing touch
    res.intersects = true;
    res.has_segment = true;
    auto lerp = [&](const Vec3& a, const Vec3& b, double ta, double tb,
                    double t) {
        return tb == ta ? a : a + ((t - ta) / (tb - ta)) * (b - a);
    };
    res.seg_a = lerp(p1lo, p1hi, lo1, hi1, lo);
    res.seg_b = lerp(p1lo, p1hi, lo1, hi1, hi);
    return res;
}

double mesh_diameter(const std::vector<Vec3>& vs) {
    if (vs.empty()) return 0.0;
    Vec3 lo = vs[0], hi = vs[0];
    for (const Vec3& v : vs) {
        lo = {std::min(lo.x, v.x), std::min(lo.y, v.y), std::min(lo.z, v.z)};
        hi = {std::max(hi.x, v.x), std::max(hi.y, v.y), std::max(hi.z, v.z)};
    }
    return (hi - lo).norm();
}

bool share_vertex(const std::array<int, 3>& a, const std::array<int, 3>& b) {
    for (int i : a)
        for (int j : b)
            if (i == j) return true;
    return false;
}

IntersectionReport test_pairs(const TriangleMesh& m,
                              std::vector<std::pair<int, int>>& candidates) {
    IntersectionReport rep;
    const double eps = 1e-10 * std::max(mesh_diameter(m.vertices), 1e-12);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()),
                     candidates.end());
    for (const auto& [i, j] : candidates) {
        if (share_vertex(m.triangles[i], m.triangles[j])) continue;
        ++rep.pairs_tested;
        Vec3 t1[3], t2[3];
        for (int k = 0; k < 3; ++k) {
            t1[k] = m.vertices[m.triangles[i][k]];
            t2[k] = m.vertices[m.triangles[j][k]];
        }
        const TriTriResult r = tri_tri_intersect(t1, t2, eps);
        if (r.intersects) {
            ++rep.intersecting_pairs;
            rep.pairs.push_back({i, j});
            if (r.has_segment && rep.sample_segments.size() < 64)
                rep.sample_segments.push_back({r.seg_a, r.seg_b});
        }
    }
    return rep;
}

} // namespace

IntersectionReport self_intersections(const TriangleMesh& m, double cell_size) {
    const int nt = static_cast<int>(m.triangles.size());
    if (nt < 2) return {};

    struct Box { Vec3 lo, hi; };
    std::vector<Box> boxes(nt);
    std::vector<double> diags(nt);
    for (int i = 0; i < nt; ++i) {
        const auto& t = m.triangles[i];
        Vec3 lo = m.vertices[t[0]], hi = lo;
        for (int k = 1; k < 3; ++k) {
            const Vec3& p = m.vertices[t[k]];
            lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
            hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
        }
        boxes[i] = {lo, hi};
        diags[i] = (hi - lo).norm();
    }
    if (cell_size <= 0.0) {
        std::vector<double> d = diags;
        std::nth_element(d.begin(), d.begin() + d.size() / 2, d.end());
        cell_size = 2.0 * std::max(d[d.size() / 2], 1e-12);
    }

    auto key = [](long long x, long long y, long long z) {
        // 21 bits per axis, offset to keep them positive
        const uint64_t m21 = (1ull << 21) - 1;
        return ((static_cast<uint64_t>(x + 1000000) & m21) << 42) |
               ((static_cast<uint64_t>(y + 1000000) & m21) << 21) |
               (static_cast<uint64_t>(z + 1000000) & m21);
    };
    std::unordered_map<uint64_t, std::vector<int>> grid;
    for (int i = 0; i < nt; ++i) {
        const auto lo = boxes[i].lo, hi = boxes[i].hi;
        for (long long x = std::llround(std::floor(lo.x / cell_size));
             x <= std::llround(std::floor(hi.x / cell_size)); ++x)
            for (long long y = std::llround(std::floor(lo.y / cell_size));
                 y <= std::llround(std::floor(hi.y / cell_size)); ++y)
                for (long long z = std::llround(std::floor(lo.z / cell_size));
                     z <= std::llround(std::floor(hi.z / cell_size)); ++z)
                    grid[key(x, y, z)].push_back(i);
    }

    auto boxes_overlap = [&](int i, int j) {
        return boxes[i].lo.x <= boxes[j].hi.x && boxes[j].lo.x <= boxes[i].hi.x &&
               boxes[i].lo.y <= boxes[j].hi.y && boxes[j].lo.y <= boxes[i].hi.y &&
               boxes[i].lo.z <= boxes[j].hi.z && boxes[j].lo.z <= boxes[i].hi.z;
    };
    std::vector<std::pair<int, int>> candidates;
    for (const auto& [k, ids] : grid) {
        for (size_t a = 0; a < ids.size(); ++a)
            for (size_t b = a + 1; b < ids.size(); ++b) {
                int i = ids[a], j = ids[b];
                if (i > j) std::swap(i, j);
                if (boxes_overlap(i, j)) candidates.push_back({i, j});
            }
    }
    return test_pairs(m, candidates);
}

IntersectionReport self_intersections_brute(const TriangleMesh& m) {
    const int nt = static_cast<int>(m.triangles.size());
    std::vector<std::pair<int, int>> candidates;
    candidates.reserve(static_cast<size_t>(nt) * (nt - 1) / 2);
    for (int i = 0; i < nt; ++i)
        for (int j = i + 1; j < nt; ++j) candidates.push_back({i, j});
    return test_pairs(m, candidates);
}

} // namespace klein
