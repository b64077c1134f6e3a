#include "klein/surface.hpp"

#include "klein/errors.hpp"

#include <cmath>
#include <numbers>

namespace klein {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;
const double kSqrt2 = std::sqrt(2.0);

Interval closed(double lo, double hi) { return {lo, hi, false, false}; }

// v is an angle everywhere in the catalog; reduce it so periodicity holds to
// the bit.
double wrap_angle(double v) {
    v = std::fmod(v, kTwoPi);
    return v < 0.0 ? v + kTwoPi : v;
}

Vec3 kb1_eval(double a, double u, double v) {
    const double bracket = a + std::cos(u / 2.0) * std::sin(v) -
                           std::sin(u / 2.0) * std::sin(2.0 * v);
    return {bracket * std::cos(u), bracket * std::sin(u),
            std::sin(u / 2.0) * std::sin(v) +
                std::cos(u / 2.0) * std::sin(2.0 * v)};
}

void kb1_partials(double a, double u, double v, Vec3& du, Vec3& dv) {
    const double ch = std::cos(u / 2.0), sh = std::sin(u / 2.0);
    const double sv = std::sin(v), cv = std::cos(v);
    const double s2v = std::sin(2.0 * v), c2v = std::cos(2.0 * v);
    const double cu = std::cos(u), su = std::sin(u);
    const double B = a + ch * sv - sh * s2v;
    const double Bu = -0.5 * sh * sv - 0.5 * ch * s2v;
    const double Bv = ch * cv - 2.0 * sh * c2v;
    du = {Bu * cu - B * su, Bu * su + B * cu, 0.5 * ch * sv - 0.5 * sh * s2v};
    dv = {Bv * cu, Bv * su, sh * cv + 2.0 * ch * c2v};
}

// The one-parameter family of circles, written as a stereographic projection
// from S^3: quotients q1/D, q2/D, q3/D with D bounded below by 1 - 5/(4*sqrt2).
struct Kb2Terms {
    double q1, q2, q3, D;
    double q1u, q2u, q3u, Du;
    double q1v, q2v, q3v, Dv;
};

Kb2Terms kb2_terms(double u, double v) {
    const double su = std::sin(u), cu = std::cos(u);
    const double s2u = std::sin(2.0 * u), c2u = std::cos(2.0 * u);
    const double sv = std::sin(v), cv = std::cos(v);
    Kb2Terms t;
    t.q1 = c2u * sv;
    t.q2 = (s2u * sv - su * cv) / kSqrt2;
    t.q3 = cu * cv;
    t.D = 1.0 - (s2u * sv + su * cv) / kSqrt2;
    t.q1u = -2.0 * s2u * sv;
    t.q2u = (2.0 * c2u * sv - cu * cv) / kSqrt2;
    t.q3u = -su * cv;
    t.Du = -(2.0 * c2u * sv + cu * cv) / kSqrt2;
    t.q1v = c2u * cv;
    t.q2v = (s2u * cv + su * sv) / kSqrt2;
    t.q3v = -cu * sv;
    t.Dv = -(s2u * cv - su * sv) / kSqrt2;
    return t;
}

Vec3 kb2_eval(double u, double v) {
    const Kb2Terms t = kb2_terms(u, v);
    return {t.q1 / t.D, t.q2 / t.D, t.q3 / t.D};
}

void kb2_partials(double u, double v, Vec3& du, Vec3& dv) {
    const Kb2Terms t = kb2_terms(u, v);
    const double D2 = t.D * t.D;
    du = {(t.q1u * t.D - t.q1 * t.Du) / D2, (t.q2u * t.D - t.q2 * t.Du) / D2,
          (t.q3u * t.D - t.q3 * t.Du) / D2};
    dv = {(t.q1v * t.D - t.q1 * t.Dv) / D2, (t.q2v * t.D - t.q2 * t.Dv) / D2,
          (t.q3v * t.D - t.q3 * t.Dv) / D2};
}

// Dickson's piecewise pair of tubes, exactly as printed: branch 1 on
// [0, pi], branch 2 on (pi, 2pi].
Vec3 kb3_eval(double u, double v) {
    const double su = std::sin(u), cu = std::cos(u);
    const double A = 6.0 * cu * (1.0 + su);
    const double R = 4.0 - 2.0 * cu;
    if (u <= kPi)
        return {A + R * cu * std::cos(v), 16.0 * su + R * su * std::cos(v),
                R * std::sin(v)};
    return {A + R * std::cos(v + kPi), 16.0 * su, R * std::sin(v)};
}

void kb3_partials(double u, double v, Vec3& du, Vec3& dv) {
    const double su = std::sin(u), cu = std::cos(u);
    const double c2u = std::cos(2.0 * u);
    const double Ap = 6.0 * (c2u - su);
    const double R = 4.0 - 2.0 * cu;
    const double Rp = 2.0 * su;
    if (u <= kPi) {
        const double cv = std::cos(v), sv = std::sin(v);
        du = {Ap + (Rp * cu - R * su) * cv, 16.0 * cu + (Rp * su + R * cu) * cv,
              Rp * sv};
        dv = {-R * cu * sv, -R * su * sv, R * cv};
    } else {
        const double cvp = std::cos(v + kPi), svp = std::sin(v + kPi);
        du = {Ap + Rp * cvp, 16.0 * cu, Rp * std::sin(v)};
        dv = {-R * svp, 0.0, R * std::cos(v)};
    }
}

ParametricSurface tube_based(std::string name, const PlanarCurve& curve,
                             const RadiusFunction& radius) {
    ParametricSurface s;
    s.kind = SurfaceKind::TubeBased;
    s.name = std::move(name);
    s.tube = make_tube(curve, radius);
    s.domain_u = curve.domain;
    s.domain_v = closed(0.0, kTwoPi);
    return s;
}

} // namespace

ParametricSurface kb1(double a) {
    if (a <= 2.0)
        throw ParameterOutOfRange("kb1 requires a > 2");
    ParametricSurface s;
    s.kind = SurfaceKind::Kb1;
    s.name = "kb1";
    s.params = {{"a", a}};
    s.domain_u = closed(0.0, kTwoPi);
    s.domain_v = closed(0.0, kTwoPi);
    s.identification = {kTwoPi, -1, 0.0, "(u + 2pi, -v) ~ (u, v)"};
    return s;
}

ParametricSurface kb2() {
    ParametricSurface s;
    s.kind = SurfaceKind::Kb2;
    s.name = "kb2";
    s.domain_u = closed(0.0, kPi);
    s.domain_v = closed(0.0, kTwoPi);
    s.identification = {kPi, -1, kPi, "(u + pi, pi - v) ~ (u, v)"};
    return s;
}

ParametricSurface kb3_dickson() {
    ParametricSurface s;
    s.kind = SurfaceKind::Kb3Dickson;
    s.name = "kb3";
    s.domain_u = closed(0.0, kTwoPi);
    s.domain_v = closed(0.0, kTwoPi);
    s.identification = {kTwoPi, -1, kPi, "(u + 2pi, pi - v) ~ (u, v)"};
    s.known_non_immersion = true;
    s.interior_seam_u = kPi;
    return s;
}

ParametricSurface piriform_tube(double a, double b, double c, double d) {
    ParametricSurface s = tube_based(
        "piriform-tube", make_cusp_piriform(a, b), make_radius_sqrt_cusp(c, d));
    s.params = {{"a", a}, {"b", b}, {"c", c}, {"d", d}};
    s.identification = {kTwoPi, -1, kPi,
                        "(t + 2pi, pi - theta) ~ (t, theta), open seam limit"};
    return s;
}

ParametricSurface dumbbell_tube(double sx, double sy, double c, double d) {
    ParametricSurface s = tube_based(
        "dumbbell-tube", make_dumbbell(sx, sy), make_radius_dumbbell(c, d));
    s.params = {{"sx", sx}, {"sy", sy}, {"c", c}, {"d", d}};
    s.identification = {kPi, -1, kPi, "(t + pi, pi - theta) ~ (t, theta)"};
    return s;
}

ParametricSurface trott_tube(double truncation) {
    ParametricSurface s =
        tube_based("trott-tube", make_trott_directrix(truncation),
                   make_radius_trott(truncation));
    s.params = {{"T", truncation}};
    s.identification = {2.0 * truncation, -1, kPi,
                        "(t + 2T, pi - theta) ~ (t, theta), truncated"};
    s.truncated_u = true;
    return s;
}

ParametricSurface torus_control(double ring_radius, double tube_radius) {
    if (tube_radius >= ring_radius)
        throw ParameterOutOfRange("torus control requires rho < R");
    const PlanarCurve circle = make_circle(ring_radius);
    ParametricSurface s = tube_based(
        "torus", circle, make_radius_constant(tube_radius, circle.domain));
    s.params = {{"R", ring_radius}, {"rho", tube_radius}};
    s.identification = {kTwoPi, 1, 0.0, "(t + 2pi, theta) ~ (t, theta)"};
    return s;
}

Vec3 surface_eval_raw(const ParametricSurface& s, double u, double v) {
    v = wrap_angle(v);
    switch (s.kind) {
    case SurfaceKind::Kb1: return kb1_eval(s.params.at("a"), u, v);
    case SurfaceKind::Kb2: return kb2_eval(u, v);
    case SurfaceKind::Kb3Dickson: return kb3_eval(u, v);
    case SurfaceKind::TubeBased: {
        if (u < s.tube->domain_t.lo || u > s.tube->domain_t.hi)
            throw OutOfDomain("tube parameter outside domain closure");
        return tube_point_raw(*s.tube, u, v);
    }
    }
    throw Error("unreachable surface kind");
}

Vec3 surface_eval(const ParametricSurface& s, double u, double v) {
    if (!s.domain_u.contains(u))
        throw OutOfDomain("surface parameter u=" + std::to_string(u) +
                          " outside domain");
    return surface_eval_raw(s, u, v);
}

SurfaceSample surface_partials(const ParametricSurface& s, double u, double v) {
    if (!s.domain_u.contains(u))
        throw OutOfDomain("surface parameter u=" + std::to_string(u) +
                          " outside domain");
    v = wrap_angle(v);
    SurfaceSample out;
    out.position = surface_eval_raw(s, u, v);
    out.analytic_partials = true;
    switch (s.kind) {
    case SurfaceKind::Kb1:
        kb1_partials(s.params.at("a"), u, v, out.du, out.dv);
        break;
    case SurfaceKind::Kb2: kb2_partials(u, v, out.du, out.dv); break;
    case SurfaceKind::Kb3Dickson: kb3_partials(u, v, out.du, out.dv); break;
    case SurfaceKind::TubeBased:
        tube_partials(*s.tube, u, v, out.du, out.dv);
        break;
    }
    return out;
}

SurfaceSample surface_partials_fd(const ParametricSurface& s, double u,
                                  double v, double h) {
    if (h <= 0.0 || h >= s.domain_u.length() / 4.0)
        throw StepTooLarge("finite-difference step unusable");
    const double lo = s.domain_u.lo, hi = s.domain_u.hi;
    if (u - h < lo || u + h > hi)
        throw OutOfDomain("finite-difference stencil leaves the domain");
    SurfaceSample out;
    out.position = surface_eval_raw(s, u, v);
    out.du = (surface_eval_raw(s, u + h, v) - surface_eval_raw(s, u - h, v)) *
             (1.0 / (2.0 * h));
    out.dv = (surface_eval_raw(s, u, v + h) - surface_eval_raw(s, u, v - h)) *
             (1.0 / (2.0 * h));
    out.analytic_partials = false;
    out.step = h;
    return out;
}

std::vector<SurfaceDescriptor> catalog_list() {
    return {
        {"kb1", "figure-eight immersion, lemniscate moved around a circle",
         {{"a", 3.0}}, "glues as (u + 2pi, -v) ~ (u, v)"},
        {"kb2", "one-parameter family of circles (stereographic projection)",
         {}, "glues as (u + pi, pi - v) ~ (u, v)"},
        {"kb3", "Dickson's piecewise pair of tubes", {},
         "known non-immersion: the tubes meet non-tangentially at u = pi"},
        {"piriform-tube",
         "tube over the cusp-parametrized piriform with square-root radius",
         {{"a", 20.0}, {"b", 8.0}, {"c", 5.5}, {"d", 0.4}},
         "open t-domain: the image misses a circle at the cusp"},
        {"dumbbell-tube",
         "tube over half of the stretched dumbbell curve",
         {{"sx", 5.0}, {"sy", 2.0}, {"c", 0.5}, {"d", 1.0 / 30.0}},
         "closed t-domain, closed image"},
        {"trott-tube", "Trott's rational directrix and radius, truncated",
         {{"T", 20.0}},
         "finite truncation leaves a missing strip near the cusp"},
    };
}

ParametricSurface make_surface(const std::string& name,
                               const std::map<std::string, double>& overrides) {
    std::map<std::string, double> p;
    auto defaults_for = [&](std::initializer_list<std::pair<const std::string, double>> init) {
        p = std::map<std::string, double>(init);
        for (const auto& [k, val] : overrides) {
            auto it = p.find(k);
            if (it == p.end())
                throw UnknownParameter("surface '" + name +
                                       "' has no parameter '" + k + "'");
            it->second = val;
        }
    };
    if (name == "kb1") {
        defaults_for({{"a", 3.0}});
        return kb1(p["a"]);
    }
    if (name == "kb2") {
        defaults_for({});
        return kb2();
    }
    if (name == "kb3") {
        defaults_for({});
        return kb3_dickson();
    }
    if (name == "piriform-tube") {
        defaults_for({{"a", 20.0}, {"b", 8.0}, {"c", 5.5}, {"d", 0.4}});
        return piriform_tube(p["a"], p["b"], p["c"], p["d"]);
    }
    if (name == "dumbbell-tube") {
        defaults_for({{"sx", 5.0}, {"sy", 2.0}, {"c", 0.5}, {"d", 1.0 / 30.0}});
        return dumbbell_tube(p["sx"], p["sy"], p["c"], p["d"]);
    }
    if (name == "trott-tube") {
        defaults_for({{"T", 20.0}});
        return trott_tube(p["T"]);
    }
    if (name == "torus") {
        defaults_for({{"R", 2.0}, {"rho", 0.5}});
        return torus_control(p["R"], p["rho"]);
    }
    throw UnknownSurface("unknown surface '" + name + "'");
}

} // namespace klein
