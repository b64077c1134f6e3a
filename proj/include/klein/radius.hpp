#pragma once

#include "klein/vec.hpp"

#include <string>

namespace klein {

enum class RadiusFamily {
    SqrtCusp,           // c - d(t-pi) sqrt(t(2pi-t)),        on (0, 2pi)
    SqrtCuspHalf,       // c - d(2t-pi) sqrt(2t(2pi-2t)),     on [0, pi]
    TrottRationalRadius,// (84t^4+56t^3+21t^2+21t+24)/(672(1+t^4))
    Constant,
};

enum class EndBehavior {
    FiniteDerivative,
    DerivativePlusInfinity,
    DerivativeMinusInfinity,
};

struct RadiusFunction {
    RadiusFamily family = RadiusFamily::Constant;
    double c = 1.0;
    double d = 0.0;
    Interval domain;
    EndBehavior start_behavior = EndBehavior::FiniteDerivative;
    EndBehavior end_behavior = EndBehavior::FiniteDerivative;
};

RadiusFunction make_radius_sqrt_cusp(double c, double d);
RadiusFunction make_radius_dumbbell(double c, double d);
RadiusFunction make_radius_trott(double truncation = 20.0);
RadiusFunction make_radius_constant(double value, const Interval& domain);

std::string radius_family_name(RadiusFamily family);

double eval_radius(const RadiusFunction& r, double t);

// Analytic derivative; throws DerivativeUnbounded at the endpoints of the
// square-root families, where |r'| blows up.
double eval_radius_derivative(const RadiusFunction& r, double t);

} // namespace klein
