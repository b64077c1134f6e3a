#include "klein/radius.hpp"

#include "klein/errors.hpp"

#include <cmath>
#include <numbers>

namespace klein {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kPositivitySamples = 4096;

void check_positive_on_domain(const RadiusFunction& r) {
    const double lo = r.domain.lo;
    const double len = r.domain.length();
    for (int i = 1; i < kPositivitySamples; ++i) {
        const double t = lo + len * static_cast<double>(i) / kPositivitySamples;
        if (eval_radius(r, t) <= 0.0)
            throw RadiusNotPositive("radius nonpositive at t=" +
                                    std::to_string(t));
    }
}

} // namespace

RadiusFunction make_radius_sqrt_cusp(double c, double d) {
    if (c <= 0.0)
        throw NonpositiveRadiusBase("radius base c must be positive");
    RadiusFunction r{RadiusFamily::SqrtCusp, c, d,
                     {0.0, 2.0 * kPi, true, true},
                     EndBehavior::DerivativePlusInfinity,
                     EndBehavior::DerivativePlusInfinity};
    if (d < 0.0) {
        r.start_behavior = EndBehavior::DerivativeMinusInfinity;
        r.end_behavior = EndBehavior::DerivativeMinusInfinity;
    }
    check_positive_on_domain(r);
    return r;
}

RadiusFunction make_radius_dumbbell(double c, double d) {
    if (c <= 0.0)
        throw NonpositiveRadiusBase("radius base c must be positive");
    RadiusFunction r{RadiusFamily::SqrtCuspHalf, c, d,
                     {0.0, kPi, false, false},
                     EndBehavior::DerivativePlusInfinity,
                     EndBehavior::DerivativePlusInfinity};
    if (d < 0.0) {
        r.start_behavior = EndBehavior::DerivativeMinusInfinity;
        r.end_behavior = EndBehavior::DerivativeMinusInfinity;
    }
    check_positive_on_domain(r);
    return r;
}

RadiusFunction make_radius_trott(double truncation) {
    if (truncation <= 0.0)
        throw ParameterOutOfRange("trott truncation must be positive");
    RadiusFunction r{RadiusFamily::TrottRationalRadius, 0.0, 0.0,
                     {-truncation, truncation, false, false},
                     EndBehavior::FiniteDerivative,
                     EndBehavior::FiniteDerivative};
    check_positive_on_domain(r);
    return r;
}

RadiusFunction make_radius_constant(double value, const Interval& domain) {
    if (value <= 0.0)
        throw NonpositiveRadiusBase("constant radius must be positive");
    return {RadiusFamily::Constant, value, 0.0, domain,
            EndBehavior::FiniteDerivative, EndBehavior::FiniteDerivative};
}

std::string radius_family_name(RadiusFamily family) {
    switch (family) {
    case RadiusFamily::SqrtCusp: return "sqrt-cusp";
    case RadiusFamily::SqrtCuspHalf: return "sqrt-cusp-half";
    case RadiusFamily::TrottRationalRadius: return "trott-rational";
    case RadiusFamily::Constant: return "constant";
    }
    return "unknown";
}

double eval_radius(const RadiusFunction& r, double t) {
    if (t < r.domain.lo || t > r.domain.hi)
        throw OutOfDomain("radius parameter outside domain");
    switch (r.family) {
    case RadiusFamily::SqrtCusp:
        return r.c - r.d * (t - kPi) * std::sqrt(std::max(0.0, t * (2.0 * kPi - t)));
    case RadiusFamily::SqrtCuspHalf:
        return r.c - r.d * (2.0 * t - kPi) *
                         std::sqrt(std::max(0.0, 2.0 * t * (2.0 * kPi - 2.0 * t)));
    case RadiusFamily::TrottRationalRadius: {
        const double t2 = t * t;
        const double t3 = t2 * t;
        const double t4 = t2 * t2;
        return (84.0 * t4 + 56.0 * t3 + 21.0 * t2 + 21.0 * t + 24.0) /
               (672.0 * (1.0 + t4));
    }
    case RadiusFamily::Constant:
        return r.c;
    }
    throw Error("unreachable radius family");
}

double eval_radius_derivative(const RadiusFunction& r, double t) {
    if (t < r.domain.lo || t > r.domain.hi)
        throw OutOfDomain("radius parameter outside domain");
    switch (r.family) {
    case RadiusFamily::SqrtCusp: {
        const double g = t * (2.0 * kPi - t);
        if (g <= 0.0)
            throw DerivativeUnbounded("sqrt-cusp radius derivative at endpoint");
        return -r.d * (4.0 * kPi * t - 2.0 * t * t - kPi * kPi) / std::sqrt(g);
    }
    case RadiusFamily::SqrtCuspHalf: {
        const double h = t * (kPi - t);
        if (h <= 0.0)
            throw DerivativeUnbounded(
                "sqrt-cusp-half radius derivative at endpoint");
        return -r.d * (8.0 * kPi * t - 8.0 * t * t - kPi * kPi) / std::sqrt(h);
    }
    case RadiusFamily::TrottRationalRadius: {
        const double t2 = t * t;
        const double t3 = t2 * t;
        const double t4 = t2 * t2;
        const double p = 84.0 * t4 + 56.0 * t3 + 21.0 * t2 + 21.0 * t + 24.0;
        const double dp = 336.0 * t3 + 168.0 * t2 + 42.0 * t + 21.0;
        const double q = 672.0 * (1.0 + t4);
        const double dq = 672.0 * 4.0 * t3;
        return (dp * q - p * dq) / (q * q);
    }
    case RadiusFamily::Constant:
        return 0.0;
    }
    throw Error("unreachable radius family");
}

} // namespace klein
