#pragma once

#include "klein/vec.hpp"

#include <string>

namespace klein {

enum class CurveFamily {
    Piriform,        // (a(1+sin t), b cos t (1+sin t)), t in [0, 2pi]
    DicksonPiriform, // (a cos t (1+sin t), b sin t),    t in [0, 2pi]
    CuspPiriform,    // (a(1-cos t), b sin t (1-cos t)), t in (0, 2pi)
    Dumbbell,        // (sx sin t, sy sin^2 t cos t),    t in [0, pi]
    TrottRational,   // (1/(t^4+1), (t^2+t+1)/(t^4+1)),  t in [-T, T]
    Circle,          // (R cos t, R sin t),              t in [0, 2pi]
};

struct PlanarCurve {
    CurveFamily family = CurveFamily::Circle;
    double p0 = 1.0; // a / sx / T / R, depending on family
    double p1 = 1.0; // b / sy, unused for TrottRational and Circle
    Interval domain;
};

struct CurveJet {
    Vec2 position;
    Vec2 velocity;
    Vec2 acceleration;
};

inline constexpr double kSpeedTolerance = 1e-9;
inline constexpr double kDefaultTrottTruncation = 20.0;

PlanarCurve make_piriform(double a, double b);
PlanarCurve make_dickson_piriform(double a = 6.0, double b = 16.0);
PlanarCurve make_cusp_piriform(double a, double b);
PlanarCurve make_dumbbell(double sx, double sy);
PlanarCurve make_trott_directrix(double truncation = kDefaultTrottTruncation);
PlanarCurve make_circle(double radius);

std::string curve_family_name(CurveFamily family);

// Position and first two derivatives of the family formula. Throws OutOfDomain
// outside the curve domain (closed ends included).
CurveJet eval_jet(const PlanarCurve& curve, double t);

// Formula evaluation without the domain check. The family formulas extend
// continuously to open endpoints; closure and limit checks evaluate there.
CurveJet eval_jet_raw(const PlanarCurve& curve, double t);

// velocity / |velocity|; throws DegenerateVelocity at cusps.
Vec2 unit_tangent(const PlanarCurve& curve, double t,
                  double speed_tolerance = kSpeedTolerance);

} // namespace klein
