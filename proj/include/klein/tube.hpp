#pragma once

#include "klein/closure.hpp"
#include "klein/curve.hpp"
#include "klein/radius.hpp"
#include "klein/vec.hpp"

namespace klein {

// Tube(t, theta) = alpha(t) + r(t)(cos theta J(T) + sin theta k), with the
// directrix embedded in the z = 0 plane and k = (0, 0, 1).
struct TubeSurface {
    PlanarCurve directrix;
    RadiusFunction radius;
    Interval domain_t;
    Interval domain_theta{0.0, 2.0 * 3.141592653589793238462643383279502884,
                          false, false};
};

// Affine angular identification theta -> sigma * theta + tau (mod 2pi)
// between the two boundary circles of a tube.
struct AngleMap {
    int sigma = 1;       // +1 or -1
    double tau = 0.0;    // radians

    double apply(double theta) const { return sigma * theta + tau; }
};

enum class TubeEnd { Start, End };

TubeSurface make_tube(const PlanarCurve& curve, const RadiusFunction& r);

Vec3 tube_point(const TubeSurface& tube, double t, double theta);

// Formula evaluation without the t-domain check (used for endpoint limits).
Vec3 tube_point_raw(const TubeSurface& tube, double t, double theta);

// Analytic partial derivatives d/dt and d/dtheta.
void tube_partials(const TubeSurface& tube, double t, double theta, Vec3& dt,
                   Vec3& dtheta);

Vec3 end_circle(const TubeSurface& tube, TubeEnd end, double eps, double theta);

// Derives the angular identification between the Start and End boundary
// circles from the limit tangent directions: antipodal tangents give
// theta -> pi - theta, equal tangents (periodic directrix) give the identity.
AngleMap end_correspondence(const TubeSurface& tube,
                            double direction_tol = 1e-2);

} // namespace klein
