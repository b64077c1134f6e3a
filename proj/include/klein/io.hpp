#pragma once

#include "klein/mesh.hpp"
#include "klein/verify.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <string>

namespace klein {

inline constexpr const char* kToolName = "klein";
inline constexpr const char* kToolVersion = "1.0.0";

struct RunConfig {
    std::string surface;
    std::map<std::string, double> params;
    int nu = 64;
    int nv = 32;
    double margin = 1e-3;
    bool weld_mesh = false;
    bool with_normals = false;
    std::string format = "obj";
    std::string output_path;
    std::string report_path;
};

void write_obj(const TriangleMesh& m, std::ostream& sink);
void write_stl_binary(const TriangleMesh& m, std::ostream& sink);
void write_ply_ascii(const TriangleMesh& m, std::ostream& sink);

// Single JSON document with stable key order; optional sections are omitted
// when absent.
void write_report(std::ostream& sink, const RunConfig& cfg,
                  const std::optional<VerificationReport>& verification,
                  const std::optional<MeshTopologyReport>& topology,
                  const std::optional<IntersectionReport>& intersections);

// Shortest decimal representation that round-trips to the same double.
std::string format_double(double x);

int cli_main(int argc, const char* const* argv);

} // namespace klein
