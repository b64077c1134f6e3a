#include "klein/tube.hpp"

#include "klein/errors.hpp"

#include <cmath>
#include <numbers>

namespace klein {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kSpeedScanSamples = 4096;

Vec2 limit_tangent_direction(const TubeSurface& tube, TubeEnd end) {
    const Interval& dom = tube.domain_t;
    const double len = dom.length();
    // March toward the end until the velocity direction stabilizes; cusp ends
    // have vanishing speed but a well-defined direction limit.
    double eps = 1e-3 * len;
    Vec2 dir{0.0, 0.0};
    for (int i = 0; i < 8; ++i) {
        const double t = end == TubeEnd::Start ? dom.lo + eps : dom.hi - eps;
        const Vec2 v = eval_jet_raw(tube.directrix, t).velocity;
        const double speed = v.norm();
        if (speed > 0.0)
            dir = v * (1.0 / speed);
        eps *= 0.25;
    }
    if (dir.norm() == 0.0)
        throw DegenerateVelocity("no tangent direction limit at tube end");
    return dir;
}

} // namespace

TubeSurface make_tube(const PlanarCurve& curve, const RadiusFunction& r) {
    if (std::abs(curve.domain.lo - r.domain.lo) > 1e-12 ||
        std::abs(curve.domain.hi - r.domain.hi) > 1e-12)
        throw DomainMismatch("directrix and radius domains differ");
    const double len = curve.domain.length();
    for (int i = 1; i < kSpeedScanSamples; ++i) {
        const double t =
            curve.domain.lo + len * static_cast<double>(i) / kSpeedScanSamples;
        if (eval_jet_raw(curve, t).velocity.norm() <= kSpeedTolerance)
            throw DegenerateDirectrix("directrix velocity vanishes at t=" +
                                      std::to_string(t));
    }
    return {curve, r, curve.domain};
}

Vec3 tube_point_raw(const TubeSurface& tube, double t, double theta) {
    theta = std::fmod(theta, 2.0 * kPi);
    if (theta < 0.0) theta += 2.0 * kPi;
    const CurveJet jet = eval_jet_raw(tube.directrix, t);
    const double speed = jet.velocity.norm();
    if (speed == 0.0)
        throw DegenerateVelocity("tube frame undefined where speed vanishes");
    const Vec2 normal = rotate90(jet.velocity * (1.0 / speed));
    const double r = eval_radius(tube.radius, t);
    const double ct = std::cos(theta);
    const double st = std::sin(theta);
    return {jet.position.x + r * ct * normal.x,
            jet.position.y + r * ct * normal.y, r * st};
}

Vec3 tube_point(const TubeSurface& tube, double t, double theta) {
    if (!tube.domain_t.contains(t))
        throw OutOfDomain("tube parameter t=" + std::to_string(t) +
                          " outside domain");
    return tube_point_raw(tube, t, theta);
}

void tube_partials(const TubeSurface& tube, double t, double theta, Vec3& dt,
                   Vec3& dtheta) {
    const CurveJet jet = eval_jet_raw(tube.directrix, t);
    const double speed = jet.velocity.norm();
    if (speed == 0.0)
        throw DegenerateVelocity("tube frame undefined where speed vanishes");
    const Vec2 tangent = jet.velocity * (1.0 / speed);
    const Vec2 normal = rotate90(tangent);
    // T' = (alpha'' - (alpha''.T) T) / |alpha'|
    const Vec2 tprime =
        (jet.acceleration - tangent * jet.acceleration.dot(tangent)) *
        (1.0 / speed);
    const Vec2 nprime = rotate90(tprime);
    const double r = eval_radius(tube.radius, t);
    const double dr = eval_radius_derivative(tube.radius, t);
    const double ct = std::cos(theta);
    const double st = std::sin(theta);
    dt = {jet.velocity.x + dr * ct * normal.x + r * ct * nprime.x,
          jet.velocity.y + dr * ct * normal.y + r * ct * nprime.y, dr * st};
    dtheta = {-r * st * normal.x, -r * st * normal.y, r * ct};
}

Vec3 end_circle(const TubeSurface& tube, TubeEnd end, double eps,
                double theta) {
    const Interval& dom = tube.domain_t;
    if (eps < 0.0 || eps >= dom.length() / 2.0)
        throw OutOfDomain("end circle offset outside half-domain");
    const double t = end == TubeEnd::Start ? dom.lo + eps : dom.hi - eps;
    return tube_point_raw(tube, t, theta);
}

AngleMap end_correspondence(const TubeSurface& tube, double direction_tol) {
    const Vec2 da = limit_tangent_direction(tube, TubeEnd::Start);
    const Vec2 db = limit_tangent_direction(tube, TubeEnd::End);
    if ((da + db).norm() <= direction_tol)
        return {-1, kPi}; // T flips, so J(T) flips: cos negates, sin persists
    if ((da - db).norm() <= direction_tol)
        return {1, 0.0}; // periodic directrix, circles match pointwise
    throw NotAntipodalTangents("end tangents neither antipodal nor equal");
}

} // namespace klein
