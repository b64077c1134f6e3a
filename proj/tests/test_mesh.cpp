#include "klein/errors.hpp"
#include "klein/mesh.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace klein;

namespace {

constexpr double kPi = std::numbers::pi;

TriangleMesh octahedron() {
    TriangleMesh m;
    m.vertices = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0},
                  {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
    m.triangles = {{0, 2, 4}, {2, 1, 4}, {1, 3, 4}, {3, 0, 4},
                   {2, 0, 5}, {1, 2, 5}, {3, 1, 5}, {0, 3, 5}};
    m.provenance.welded = true;
    return m;
}

// Rotation about the axis (1, 1, 1) by 2pi/3 plus a translation.
Vec3 rigid_motion(const Vec3& p) {
    return Vec3{p.z + 10.0, p.x - 3.0, p.y + 0.25};
}

} // namespace

TEST_CASE("tessellation counts and guards") {
    const TriangleMesh m = tessellate(torus_control(), 16, 16);
    CHECK(m.vertices.size() == 17u * 17u);
    CHECK(m.triangles.size() == 2u * 16u * 16u);
    CHECK(m.grid_u.size() == 17u);
    CHECK(m.grid_v.front() == 0.0);
    CHECK(m.grid_v.back() == doctest::Approx(2.0 * kPi));
    CHECK_THROWS_AS(tessellate(torus_control(), 2, 16), ParameterOutOfRange);
}

TEST_CASE("tessellation clips open ends and bumps odd nv") {
    const ParametricSurface s = piriform_tube();
    const TriangleMesh m = tessellate(s, 32, 15, 1e-3);
    // v_tau = pi needs an even theta grid
    CHECK(m.provenance.nv == 16);
    CHECK(m.grid_u.front() == doctest::Approx(1e-3 * 2.0 * kPi));
    CHECK(m.grid_u.back() == doctest::Approx(2.0 * kPi * (1.0 - 1e-3)));

    const TriangleMesh d = tessellate(dumbbell_tube(), 16, 8);
    CHECK(d.grid_u.front() == 0.0); // closed ends sampled exactly
    CHECK(d.grid_u.back() == doctest::Approx(kPi));
}

TEST_CASE("welded torus topology") {
    const ParametricSurface s = torus_control();
    const TriangleMesh w = weld(tessellate(s, 16, 16), s);
    CHECK(w.provenance.welded);
    const MeshTopologyReport t = euler_characteristic(w);
    CHECK(t.V == 256);
    CHECK(t.E == 768);
    CHECK(t.F == 512);
    CHECK(t.euler_characteristic == 0);
    CHECK(t.boundary_edge_count == 0);
    CHECK(t.watertight);
    CHECK(t.orientability_defined);
    CHECK(t.orientable);
    CHECK(orientability(w));
}

TEST_CASE("octahedron control topology") {
    const MeshTopologyReport t = euler_characteristic(octahedron());
    CHECK(t.V == 6);
    CHECK(t.E == 12);
    CHECK(t.F == 8);
    CHECK(t.euler_characteristic == 2);
    CHECK(t.watertight);
    CHECK(t.orientable);
}

TEST_CASE("welded Klein meshes: chi 0, watertight, non-orientable") {
    struct Case {
        const char* name;
        int nu, nv;
    };
    for (const Case c : {Case{"kb1", 48, 32}, Case{"kb2", 48, 32},
                         Case{"dumbbell-tube", 48, 32}, Case{"kb3", 48, 32}}) {
        const ParametricSurface s = make_surface(c.name);
        const TriangleMesh w = weld(tessellate(s, c.nu, c.nv), s);
        const MeshTopologyReport t = euler_characteristic(w);
        INFO(c.name);
        CHECK(t.watertight);
        CHECK(t.euler_characteristic == 0);
        CHECK(t.orientability_defined);
        CHECK_FALSE(t.orientable);
    }
}

TEST_CASE("euler characteristic is stable under refinement") {
    const ParametricSurface s = dumbbell_tube();
    for (int n : {16, 32, 64}) {
        const MeshTopologyReport t =
            euler_characteristic(weld(tessellate(s, n, n), s));
        CHECK(t.euler_characteristic == 0);
        CHECK(t.watertight);
    }
}

TEST_CASE("open tubes keep two boundary loops") {
    for (const char* name : {"piriform-tube", "trott-tube"}) {
        const ParametricSurface s = make_surface(name);
        const TriangleMesh w = weld(tessellate(s, 32, 16), s);
        const MeshTopologyReport t = euler_characteristic(w);
        INFO(name);
        CHECK_FALSE(t.watertight);
        CHECK(t.boundary_loops == 2);
        CHECK(t.boundary_edge_count == 2 * 16);
        CHECK_THROWS_AS(orientability(w), NotWatertight);
    }
}

TEST_CASE("weld rejects a wrong identification") {
    ParametricSurface s = dumbbell_tube();
    const TriangleMesh m = tessellate(s, 16, 16);
    s.identification->v_tau = 0.0; // claims theta ~ theta across the seam
    CHECK_THROWS_AS(weld(m, s), InconsistentSeam);
    s.identification->v_tau = 0.1; // not on the theta grid at all
    CHECK_THROWS_AS(weld(m, s), InconsistentSeam);
}

TEST_CASE("weld guards") {
    const ParametricSurface s = torus_control();
    const TriangleMesh w = weld(tessellate(s, 16, 16), s);
    CHECK_THROWS_AS(weld(w, s), ParameterOutOfRange); // already welded
}

TEST_CASE("vertex normals") {
    // flat sheet: all normals point straight up
    TriangleMesh flat;
    flat.vertices = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}};
    flat.triangles = {{0, 1, 2}, {0, 2, 3}};
    const TriangleMesh fn = compute_normals(flat);
    REQUIRE(fn.normals.size() == 4);
    for (const Vec3& n : fn.normals) {
        CHECK(n.x == doctest::Approx(0.0));
        CHECK(n.y == doctest::Approx(0.0));
        CHECK(n.z == doctest::Approx(1.0));
    }

    // octahedron: area-weighted normals point radially outward
    const TriangleMesh on = compute_normals(octahedron());
    for (size_t i = 0; i < on.vertices.size(); ++i) {
        const Vec3 dir = on.vertices[i];
        CHECK(on.normals[i].dot(dir) == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK_FALSE(on.provenance.orientation_conflict);

    // a Klein mesh cannot be oriented; the conflict is flagged
    const ParametricSurface s = kb1();
    const TriangleMesh kn = compute_normals(weld(tessellate(s, 32, 24), s));
    CHECK(kn.provenance.orientation_conflict);
    for (const Vec3& n : kn.normals)
        CHECK(n.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("tri-tri: crossing, touching, disjoint, coplanar") {
    TriangleMesh m;
    m.vertices = {// t0 in the z = 0 plane
                  {0, 0, 0}, {2, 0, 0}, {0, 2, 0},
                  // t1 pierces it near the centroid
                  {0.5, 0.5, -1}, {0.7, 0.5, 1}, {0.5, 0.7, 1},
                  // t2 only touches the plane at one vertex
                  {5, 5, 0}, {6, 5, 1}, {5, 6, 1},
                  // t3 far away
                  {50, 50, 50}, {51, 50, 50}, {50, 51, 50},
                  // t4 coplanar with t0, properly overlapping
                  {0.2, 0.2, 0}, {1.2, 0.2, 0}, {0.2, 1.2, 0},
                  // t5 coplanar with t0, disjoint
                  {10, 10, 0}, {11, 10, 0}, {10, 11, 0}};
    m.triangles = {{0, 1, 2},    {3, 4, 5},    {6, 7, 8},
                   {9, 10, 11},  {12, 13, 14}, {15, 16, 17}};
    const IntersectionReport rep = self_intersections_brute(m);
    // t1 pierces both coplanar triangles t0 and t4; t4 overlaps t0 in-plane
    std::vector<std::pair<int, int>> expect = {{0, 1}, {0, 4}, {1, 4}};
    CHECK(rep.pairs == expect);
    CHECK(rep.intersecting_pairs == 3);
    CHECK_FALSE(rep.sample_segments.empty());
}

TEST_CASE("torus does not self-intersect") {
    const ParametricSurface s = torus_control();
    const TriangleMesh w = weld(tessellate(s, 32, 16), s);
    const IntersectionReport rep = self_intersections(w);
    CHECK(rep.intersecting_pairs == 0);
    const IntersectionReport brute = self_intersections_brute(w);
    CHECK(brute.intersecting_pairs == 0);
    CHECK(rep.pairs == brute.pairs);
}

TEST_CASE("Klein meshes self-intersect") {
    for (const char* name : {"kb1", "dumbbell-tube"}) {
        const ParametricSurface s = make_surface(name);
        const TriangleMesh w = weld(tessellate(s, 64, 32), s);
        const IntersectionReport rep = self_intersections(w);
        INFO(name);
        CHECK(rep.intersecting_pairs > 0);
        CHECK_FALSE(rep.sample_segments.empty());
    }
}

TEST_CASE("spatial hash agrees with the all-pairs oracle") {
    const ParametricSurface s = dumbbell_tube();
    const TriangleMesh w = weld(tessellate(s, 28, 14), s);
    REQUIRE(w.triangles.size() <= 2000);
    const IntersectionReport fast = self_intersections(w);
    const IntersectionReport brute = self_intersections_brute(w);
    CHECK(fast.intersecting_pairs == brute.intersecting_pairs);
    CHECK(fast.pairs == brute.pairs);
    CHECK(fast.pairs_tested <= brute.pairs_tested);
}

TEST_CASE("intersection count is invariant under rigid motion") {
    const ParametricSurface s = dumbbell_tube();
    TriangleMesh w = weld(tessellate(s, 48, 24), s);
    const IntersectionReport before = self_intersections(w);
    for (Vec3& v : w.vertices) v = rigid_motion(v);
    const IntersectionReport after = self_intersections(w);
    CHECK(before.intersecting_pairs == after.intersecting_pairs);
    CHECK(before.pairs == after.pairs);
}
