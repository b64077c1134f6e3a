#pragma once

#include "klein/curve.hpp"
#include "klein/radius.hpp"

#include <vector>

namespace klein {

struct ToleranceConfig {
    double position_tol = 1e-9;
    double tangent_tol = 1e-9;
    double radius_tol = 1e-9;
    double exponent_lo = 0.4;
    double exponent_hi = 0.6;
};

// Residuals for the four tube-closure conditions:
//   i)   alpha(a) = alpha(b)
//   ii)  alpha'(a) = -alpha'(b)   (or +alpha'(b) for a periodic directrix)
//   iii) r(a) = r(b)
//   iv)  r'(a) = r'(b) = +-inf, detected as a square-root local exponent.
struct ClosureReport {
    double cond_i_residual = 0.0;
    double cond_ii_residual = 0.0;
    double cond_iii_residual = 0.0;
    double cond_iv_exponent_start = 0.0;
    double cond_iv_exponent_end = 0.0;
    double cond_iv_exponent = 0.0; // the exponent farthest from 1/2
    bool cond_i_pass = false;
    bool cond_ii_pass = false;
    bool cond_iii_pass = false;
    bool cond_iv_pass = false;
    bool all_pass = false;
};

// eps_k = 0.1 * 2^-k, k = 0..10.
std::vector<double> closure_epsilon_sequence();

ClosureReport check_closure_conditions(const PlanarCurve& curve,
                                       const RadiusFunction& r,
                                       const ToleranceConfig& cfg = {});

// Log-log least-squares slope of |values_k| against eps_k; entries where the
// value underflows are dropped. Returns fallback when too few points remain
// (a locally constant function has increments O(eps) at most, so the
// degenerate all-zero case reports exponent 1).
double fit_local_exponent(const std::vector<double>& eps,
                          const std::vector<double>& values,
                          double fallback = 1.0);

} // namespace klein
