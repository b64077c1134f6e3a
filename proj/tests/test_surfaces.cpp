#include "klein/errors.hpp"
#include "klein/surface.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace klein;

namespace {

constexpr double kPi = std::numbers::pi;

double glue_residual(const ParametricSurface& s, double u, double v) {
    const IdentificationMap& id = *s.identification;
    const Vec3 a = surface_eval_raw(s, u, v);
    const Vec3 b = surface_eval_raw(s, u + id.u_period, id.v_sigma * v + id.v_tau);
    return (a - b).norm();
}

} // namespace

TEST_CASE("kb1 point values") {
    const ParametricSurface s = kb1();
    const Vec3 p = surface_eval(s, 0.0, 0.0);
    CHECK(p.x == 3.0);
    CHECK(p.y == 0.0);
    CHECK(p.z == 0.0);
    const Vec3 q = surface_eval(s, 0.0, kPi / 2.0);
    CHECK(q.x == doctest::Approx(4.0).epsilon(1e-15)); // a + sin(pi/2)
    CHECK(std::abs(q.z) < 1e-15);                      // sin(pi) term
    CHECK_THROWS_AS(kb1(2.0), ParameterOutOfRange);
}

TEST_CASE("kb1 gluing identity") {
    const ParametricSurface s = kb1();
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> pu(0.0, 2.0 * kPi);
    std::uniform_real_distribution<double> pv(0.0, 2.0 * kPi);
    for (int i = 0; i < 1000; ++i)
        CHECK(glue_residual(s, pu(rng), pv(rng)) < 1e-12);
}

TEST_CASE("kb1 partial dv at origin") {
    const SurfaceSample sample = surface_partials(kb1(), 0.0, 0.0);
    CHECK(sample.dv.z == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(sample.dv.x == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("kb2 point values and bounded denominator") {
    const ParametricSurface s = kb2();
    const Vec3 p = surface_eval(s, 0.0, 0.0);
    CHECK(p.x == 0.0);
    CHECK(p.y == 0.0);
    CHECK(p.z == 1.0);
    const Vec3 q = surface_eval(s, 0.0, kPi);
    CHECK(std::abs(q.x) < 1e-15);
    CHECK(q.z == doctest::Approx(-1.0).epsilon(1e-15));

    // the projection denominator stays away from zero on the whole domain
    const double sqrt2 = std::sqrt(2.0);
    double dmin = 1e300;
    for (int i = 0; i <= 512; ++i)
        for (int j = 0; j <= 512; ++j) {
            const double u = kPi * i / 512.0;
            const double v = 2.0 * kPi * j / 512.0;
            const double den = 1.0 - (std::sin(2.0 * u) * std::sin(v) +
                                      std::sin(u) * std::cos(v)) /
                                         sqrt2;
            dmin = std::min(dmin, den);
        }
    CHECK(dmin > 0.05);
    // true minimum is 1 - 5/(4 sqrt2); the grid lands close to it
    CHECK(dmin == doctest::Approx(0.11611652351681559).epsilon(1e-3));
    // the surface itself never blows up
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> pu(0.0, kPi), pv(0.0, 2.0 * kPi);
    for (int i = 0; i < 2000; ++i) {
        const Vec3 w = surface_eval(s, pu(rng), pv(rng));
        CHECK(w.finite());
        CHECK(w.norm() < 20.0);
    }
}

TEST_CASE("kb2 gluing identity") {
    const ParametricSurface s = kb2();
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> pu(0.0, kPi);
    std::uniform_real_distribution<double> pv(0.0, 2.0 * kPi);
    for (int i = 0; i < 1000; ++i)
        CHECK(glue_residual(s, pu(rng), pv(rng)) < 1e-12);
}

TEST_CASE("kb3 point values") {
    const ParametricSurface s = kb3_dickson();
    const Vec3 p = surface_eval(s, 0.0, 0.0);
    CHECK(p.x == 8.0); // 6 + (4 - 2)
    CHECK(p.y == 0.0);
    CHECK(p.z == 0.0);
    const Vec3 q = surface_eval(s, 3.0 * kPi / 2.0, 0.0);
    CHECK(q.x == doctest::Approx(-4.0).epsilon(1e-14));
    CHECK(q.y == doctest::Approx(-16.0).epsilon(1e-14));
    CHECK(std::abs(q.z) < 1e-14);
    CHECK(s.known_non_immersion);
    REQUIRE(s.interior_seam_u.has_value());
    CHECK(*s.interior_seam_u == doctest::Approx(kPi));
}

TEST_CASE("kb3 planarity of the v = pi section") {
    const ParametricSurface s = kb3_dickson();
    for (int i = 0; i <= 128; ++i) {
        const double u = 2.0 * kPi * i / 128.0;
        CHECK(std::abs(surface_eval(s, u, kPi).z) < 1e-13);
    }
}

TEST_CASE("kb3 branches join continuously at u = pi") {
    const ParametricSurface s = kb3_dickson();
    for (int j = 0; j <= 64; ++j) {
        const double v = 2.0 * kPi * j / 64.0;
        const Vec3 a = surface_eval(s, kPi, v);            // first branch
        const Vec3 b = surface_eval_raw(s, kPi + 1e-12, v); // second branch
        CHECK((a - b).norm() < 1e-9);
    }
}

TEST_CASE("kb3 seam identity at u = 0 / 2pi") {
    const ParametricSurface s = kb3_dickson();
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> pv(0.0, 2.0 * kPi);
    for (int i = 0; i < 500; ++i) {
        const double v = pv(rng);
        const Vec3 a = surface_eval(s, 0.0, v);
        const Vec3 b = surface_eval(s, 2.0 * kPi, kPi - v);
        CHECK((a - b).norm() < 1e-12);
    }
}

TEST_CASE("v-periodicity is exact") {
    const ParametricSurface surfaces[] = {kb1(), kb2(), kb3_dickson(),
                                          dumbbell_tube(), torus_control()};
    std::mt19937_64 rng(21);
    for (const ParametricSurface& s : surfaces) {
        std::uniform_real_distribution<double> pu(s.domain_u.lo,
                                                  s.domain_u.hi);
        std::uniform_real_distribution<double> pv(0.0, 2.0 * kPi);
        for (int i = 0; i < 100; ++i) {
            const double u = pu(rng);
            const double v = pv(rng);
            const Vec3 a = surface_eval(s, u, v);
            // v + 2pi rounds once before the call; everything after is exact
            const Vec3 b = surface_eval(s, u, v + 2.0 * kPi);
            CHECK((a - b).norm() < 1e-13 * (1.0 + a.norm()));
        }
    }
}

TEST_CASE("tube surface oracles through the catalog types") {
    const Vec3 p = surface_eval(piriform_tube(), kPi, 0.0);
    CHECK(p.x == doctest::Approx(45.5).epsilon(1e-14));
    const Vec3 q = surface_eval(dumbbell_tube(), 0.0, 0.0);
    CHECK(q.y == doctest::Approx(0.5).epsilon(1e-15));
    const Vec3 r = surface_eval(trott_tube(), 0.0, kPi / 2.0);
    CHECK(r.z == doctest::Approx(1.0 / 28.0).epsilon(1e-15));
    const Vec3 t = surface_eval(torus_control(), kPi, 0.0);
    CHECK(t.x == doctest::Approx(-1.5).epsilon(1e-14));
    CHECK_THROWS_AS(surface_eval(piriform_tube(), 0.0, 0.0), OutOfDomain);
    CHECK_THROWS_AS(surface_eval(dumbbell_tube(), -0.1, 0.0), OutOfDomain);
}

TEST_CASE("piriform tube height is bounded by the radius maximum") {
    const ParametricSurface s = piriform_tube();
    const double bound = 7.4739208802178717;
    double zmax = 0.0;
    for (int i = 1; i < 512; ++i)
        for (int j = 0; j < 64; ++j) {
            const double t = 2.0 * kPi * i / 512.0;
            const double th = 2.0 * kPi * j / 64.0;
            zmax = std::max(zmax, std::abs(surface_eval(s, t, th).z));
        }
    CHECK(zmax <= bound + 1e-12);
    CHECK(zmax > bound - 1e-2);
}

TEST_CASE("analytic partials match finite differences") {
    const ParametricSurface surfaces[] = {kb1(), kb2(), piriform_tube(),
                                          dumbbell_tube(), trott_tube(),
                                          torus_control()};
    std::mt19937_64 rng(31);
    for (const ParametricSurface& s : surfaces) {
        const double len = s.domain_u.length();
        std::uniform_real_distribution<double> pu(s.domain_u.lo + 0.02 * len,
                                                  s.domain_u.hi - 0.02 * len);
        std::uniform_real_distribution<double> pv(0.0, 2.0 * kPi);
        const double h = 1e-5 * len / (2.0 * kPi);
        for (int i = 0; i < 100; ++i) {
            const double u = pu(rng);
            const double v = pv(rng);
            const SurfaceSample an = surface_partials(s, u, v);
            const SurfaceSample fd = surface_partials_fd(s, u, v, h);
            CHECK((an.du - fd.du).norm() < 1e-4 * (1.0 + an.du.norm()));
            CHECK((an.dv - fd.dv).norm() < 1e-4 * (1.0 + an.dv.norm()));
        }
    }
}

TEST_CASE("finite difference guards") {
    const ParametricSurface s = kb1();
    CHECK_THROWS_AS(surface_partials_fd(s, kPi, 0.0, 10.0), StepTooLarge);
    CHECK_THROWS_AS(surface_partials_fd(s, kPi, 0.0, 0.0), StepTooLarge);
    CHECK_THROWS_AS(surface_partials_fd(s, 0.0, 0.0, 1e-3), OutOfDomain);
}

TEST_CASE("catalog listing") {
    const std::vector<SurfaceDescriptor> cat = catalog_list();
    REQUIRE(cat.size() == 6);
    CHECK(cat[0].name == "kb1");
    CHECK(cat[1].name == "kb2");
    CHECK(cat[2].name == "kb3");
    CHECK(cat[3].name == "piriform-tube");
    CHECK(cat[4].name == "dumbbell-tube");
    CHECK(cat[5].name == "trott-tube");
    CHECK(cat[0].defaults.at("a") == 3.0);
    CHECK(cat[3].defaults.at("c") == 5.5);
    CHECK(cat[2].notes.find("non-immersion") != std::string::npos);
}

TEST_CASE("make_surface dispatch") {
    const ParametricSurface s = make_surface("kb1", {{"a", 4.0}});
    CHECK(s.params.at("a") == 4.0);
    const ParametricSurface t = make_surface("piriform-tube", {{"d", 0.3}});
    CHECK(t.params.at("d") == 0.3);
    CHECK(t.params.at("a") == 20.0);
    CHECK_THROWS_AS(make_surface("nope"), UnknownSurface);
    CHECK_THROWS_AS(make_surface("kb2", {{"a", 1.0}}), UnknownParameter);
    CHECK_THROWS_AS(make_surface("torus", {{"rho", 3.0}}),
                    ParameterOutOfRange);
}

TEST_CASE("identification maps") {
    CHECK(kb1().identification->v_sigma == -1);
    CHECK(kb1().identification->v_tau == 0.0);
    CHECK(kb2().identification->u_period == doctest::Approx(kPi));
    CHECK(kb2().identification->v_tau == doctest::Approx(kPi));
    CHECK(kb3_dickson().identification->v_tau == doctest::Approx(kPi));
    CHECK(dumbbell_tube().identification->v_sigma == -1);
    CHECK(torus_control().identification->v_sigma == 1);
    CHECK(trott_tube().truncated_u);
    CHECK_FALSE(dumbbell_tube().truncated_u);
}

TEST_CASE("mirror symmetry of the symmetric-radius piriform tube") {
    // with d = 0 the radius is constant and the image is symmetric in y;
    // parameter pairs (t, theta) and (2pi - t, theta) are mirror images
    const ParametricSurface s = piriform_tube(20.0, 8.0, 5.5, 0.0);
    for (int i = 1; i < 64; ++i)
        for (int j = 0; j < 16; ++j) {
            const double t = 2.0 * kPi * i / 64.0;
            const double th = 2.0 * kPi * j / 16.0;
            const Vec3 a = surface_eval(s, t, th);
            const Vec3 b = surface_eval(s, 2.0 * kPi - t, th);
            CHECK(a.x == doctest::Approx(b.x).epsilon(1e-12));
            CHECK(a.y == doctest::Approx(-b.y).epsilon(1e-12));
            CHECK(a.z == doctest::Approx(b.z).epsilon(1e-12));
        }
}
