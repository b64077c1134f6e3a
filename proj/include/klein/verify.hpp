#pragma once

#include "klein/closure.hpp"
#include "klein/surface.hpp"

#include <optional>
#include <string>
#include <vector>

namespace klein {

struct FundamentalFormSample {
    double u = 0.0, v = 0.0;
    double E = 0.0, F = 0.0, G = 0.0;
    double det = 0.0; // EG - F^2
};

struct VerifyConfig {
    int regularity_nu = 256;
    int regularity_nv = 64;
    double regularity_margin = 1e-3; // fraction of the domain length, each end
    double regularity_rel_tol = 1e-6; // pass: min_det > rel_tol * median_det
    int gluing_samples = 10000;
    double gluing_tol = 1e-9;
    double gluing_limit_min_slope = 0.2;
    int seam_samples = 256;
    double seam_step = 1e-5; // fraction of the u-domain length
    // Step for seams whose radius derivative is unbounded: the normal tilts
    // like sqrt(step) there, so the probe must sit much closer to the seam.
    double seam_step_cusp = 1e-12;
    double seam_angle_tol = 1e-3; // radians
    ToleranceConfig closure;
    unsigned long long seed = 12345;
};

struct RegularityResult {
    double min_det = 0.0;
    double argmin_u = 0.0;
    double argmin_v = 0.0;
    double median_det = 0.0;
    bool pass = false;
};

struct GluingResult {
    double max_residual = 0.0;
    // Residual per epsilon for open-seam tubes, largest epsilon first.
    std::vector<double> limit_residuals;
    double limit_slope = 0.0;
    bool limit_mode = false;
    bool informational = false; // truncated seams: reported, never failed
    bool pass = false;
};

struct SeamTangencyResult {
    double seam_u = 0.0;
    double max_angle = 0.0;
    double argmax_v = 0.0;
    bool pass = false;
};

struct VerificationReport {
    std::string surface_name;
    RegularityResult regularity;
    std::optional<GluingResult> gluing;
    std::optional<ClosureReport> closure;
    bool closure_iv_required = false;
    std::optional<SeamTangencyResult> seam_tangency;
    bool self_intersection_expected = false;
    bool pass = false;
};

FundamentalFormSample first_fundamental_form(const ParametricSurface& s,
                                             double u, double v,
                                             double h = 0.0);

RegularityResult regularity_scan(const ParametricSurface& s, int nu, int nv,
                                 double margin,
                                 double rel_tol = 1e-6);

GluingResult gluing_residual(const ParametricSurface& s, int n_samples,
                             const VerifyConfig& cfg = {});

SeamTangencyResult seam_tangency(const ParametricSurface& s, double seam_u,
                                 int n_samples, double h,
                                 double angle_tol = 1e-3);

// Closure conditions of the underlying curve/radius pair plus end-circle
// distance residuals along the epsilon sequence.
struct ClosureLimitResult {
    ClosureReport conditions;
    std::vector<double> end_circle_residuals;
};

ClosureLimitResult closure_limit_check(const ParametricSurface& s,
                                       const std::vector<double>& eps_sequence,
                                       const ToleranceConfig& tol = {});

VerificationReport full_verify(const ParametricSurface& s,
                               const VerifyConfig& cfg = {});

} // namespace klein
