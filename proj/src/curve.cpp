#include "klein/curve.hpp"

#include "klein/errors.hpp"

#include <cmath>
#include <numbers>

namespace klein {

namespace {

constexpr double kPi = std::numbers::pi;

void require_nonzero(double value, const char* name) {
    if (value == 0.0)
        throw ZeroParameter(std::string(name) + " must be nonzero");
}

// Value and first two derivatives of P/Q at t, by the quotient rule.
struct Rational2 {
    double f, df, ddf;
};

Rational2 rational_jet(double p, double dp, double ddp, double q, double dq,
                       double ddq) {
    const double f = p / q;
    const double df = (dp * q - p * dq) / (q * q);
    const double ddf = ((ddp * q - p * ddq) * q - 2.0 * (dp * q - p * dq) * dq) /
                       (q * q * q);
    return {f, df, ddf};
}

} // namespace

PlanarCurve make_piriform(double a, double b) {
    require_nonzero(a, "piriform a");
    require_nonzero(b, "piriform b");
    return {CurveFamily::Piriform, a, b, {0.0, 2.0 * kPi, false, false}};
}

PlanarCurve make_dickson_piriform(double a, double b) {
    require_nonzero(a, "dickson piriform a");
    require_nonzero(b, "dickson piriform b");
    return {CurveFamily::DicksonPiriform, a, b, {0.0, 2.0 * kPi, false, false}};
}

PlanarCurve make_cusp_piriform(double a, double b) {
    require_nonzero(a, "cusp piriform a");
    require_nonzero(b, "cusp piriform b");
    return {CurveFamily::CuspPiriform, a, b, {0.0, 2.0 * kPi, true, true}};
}

PlanarCurve make_dumbbell(double sx, double sy) {
    require_nonzero(sx, "dumbbell sx");
    require_nonzero(sy, "dumbbell sy");
    return {CurveFamily::Dumbbell, sx, sy, {0.0, kPi, false, false}};
}

PlanarCurve make_trott_directrix(double truncation) {
    if (truncation <= 0.0)
        throw ParameterOutOfRange("trott truncation must be positive");
    return {CurveFamily::TrottRational, truncation, 0.0,
            {-truncation, truncation, false, false}};
}

PlanarCurve make_circle(double radius) {
    require_nonzero(radius, "circle radius");
    return {CurveFamily::Circle, radius, 0.0, {0.0, 2.0 * kPi, false, false}};
}

std::string curve_family_name(CurveFamily family) {
    switch (family) {
    case CurveFamily::Piriform: return "piriform";
    case CurveFamily::DicksonPiriform: return "dickson-piriform";
    case CurveFamily::CuspPiriform: return "cusp-piriform";
    case CurveFamily::Dumbbell: return "dumbbell";
    case CurveFamily::TrottRational: return "trott-rational";
    case CurveFamily::Circle: return "circle";
    }
    return "unknown";
}

CurveJet eval_jet(const PlanarCurve& curve, double t) {
    if (!curve.domain.contains(t))
        throw OutOfDomain("curve parameter " + std::to_string(t) +
                          " outside domain");
    return eval_jet_raw(curve, t);
}

CurveJet eval_jet_raw(const PlanarCurve& curve, double t) {
    const double a = curve.p0;
    const double b = curve.p1;
    const double s = std::sin(t);
    const double c = std::cos(t);
    switch (curve.family) {
    case CurveFamily::Piriform: {
        const double s2 = std::sin(2.0 * t);
        const double c2 = std::cos(2.0 * t);
        return {{a * (1.0 + s), b * c * (1.0 + s)},
                {a * c, b * (c2 - s)},
                {-a * s, b * (-c - 2.0 * s2)}};
    }
    case CurveFamily::DicksonPiriform: {
        const double s2 = std::sin(2.0 * t);
        const double c2 = std::cos(2.0 * t);
        return {{a * c * (1.0 + s), b * s},
                {a * (c2 - s), b * c},
                {a * (-c - 2.0 * s2), -b * s}};
    }
    case CurveFamily::CuspPiriform: {
        const double s2 = std::sin(2.0 * t);
        const double c2 = std::cos(2.0 * t);
        return {{a * (1.0 - c), b * s * (1.0 - c)},
                {a * s, b * (c - c2)},
                {a * c, b * (-s + 2.0 * s2)}};
    }
    case CurveFamily::Dumbbell:
        return {{a * s, b * s * s * c},
                {a * c, b * s * (3.0 * c * c - 1.0)},
                {-a * s, b * c * (9.0 * c * c - 7.0)}};
    case CurveFamily::TrottRational: {
        const double q = t * t * t * t + 1.0;
        const double dq = 4.0 * t * t * t;
        const double ddq = 12.0 * t * t;
        const Rational2 x = rational_jet(1.0, 0.0, 0.0, q, dq, ddq);
        const Rational2 y =
            rational_jet(t * t + t + 1.0, 2.0 * t + 1.0, 2.0, q, dq, ddq);
        return {{x.f, y.f}, {x.df, y.df}, {x.ddf, y.ddf}};
    }
    case CurveFamily::Circle:
        return {{a * c, a * s}, {-a * s, a * c}, {-a * c, -a * s}};
    }
    throw Error("unreachable curve family");
}

Vec2 unit_tangent(const PlanarCurve& curve, double t, double speed_tolerance) {
    if (t < curve.domain.lo || t > curve.domain.hi)
        throw OutOfDomain("curve parameter outside domain closure");
    const CurveJet jet = eval_jet_raw(curve, t);
    const double speed = jet.velocity.norm();
    if (speed <= speed_tolerance)
        throw DegenerateVelocity("velocity norm " + std::to_string(speed) +
                                 " below tolerance at t=" + std::to_string(t));
    return jet.velocity * (1.0 / speed);
}

} // namespace klein
