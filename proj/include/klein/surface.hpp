#pragma once

#include "klein/tube.hpp"
#include "klein/vec.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace klein {

enum class SurfaceKind { Kb1, Kb2, Kb3Dickson, TubeBased };

// Seam correspondence (u, v) ~ (u + u_period, v_sigma * v + v_tau mod 2pi).
struct IdentificationMap {
    double u_period = 0.0;
    int v_sigma = 1;
    double v_tau = 0.0;
    std::string description;
};

struct ParametricSurface {
    SurfaceKind kind = SurfaceKind::Kb1;
    std::string name;
    std::map<std::string, double> params;
    Interval domain_u;
    Interval domain_v;
    std::optional<IdentificationMap> identification;
    std::optional<TubeSurface> tube;
    bool known_non_immersion = false;
    // Finite truncation of an unbounded parameter range: the u-seam does not
    // close and gluing is reported informationally instead of pass/fail.
    bool truncated_u = false;
    // Interior parameter line where smoothness is in question (Kb3: u = pi).
    std::optional<double> interior_seam_u;
};

struct SurfaceSample {
    Vec3 position;
    Vec3 du;
    Vec3 dv;
    bool analytic_partials = true;
    double step = 0.0;
};

struct SurfaceDescriptor {
    std::string name;
    std::string source;
    std::map<std::string, double> defaults;
    std::string notes;
};

ParametricSurface kb1(double a = 3.0);
ParametricSurface kb2();
ParametricSurface kb3_dickson();
ParametricSurface piriform_tube(double a = 20.0, double b = 8.0,
                                double c = 5.5, double d = 0.4);
ParametricSurface dumbbell_tube(double sx = 5.0, double sy = 2.0,
                                double c = 0.5, double d = 1.0 / 30.0);
ParametricSurface trott_tube(double truncation = 20.0);

// Embedded control surface (not part of the catalog): circle directrix with
// constant tube radius.
ParametricSurface torus_control(double ring_radius = 2.0,
                                double tube_radius = 0.5);

Vec3 surface_eval(const ParametricSurface& s, double u, double v);

// Formula evaluation without the u-domain check. Closed-form kinds accept any
// real u (the trig formulas are global); tube kinds clamp to the closure of
// the t-domain.
Vec3 surface_eval_raw(const ParametricSurface& s, double u, double v);

// Analytic partial derivatives.
SurfaceSample surface_partials(const ParametricSurface& s, double u, double v);

// Central-difference partials with step h, for cross-checking the analytic
// path.
SurfaceSample surface_partials_fd(const ParametricSurface& s, double u,
                                  double v, double h = 1e-5);

std::vector<SurfaceDescriptor> catalog_list();

// Builds a catalog surface by name with optional parameter overrides.
// Throws UnknownSurface / UnknownParameter.
ParametricSurface make_surface(const std::string& name,
                               const std::map<std::string, double>& overrides = {});

} // namespace klein
