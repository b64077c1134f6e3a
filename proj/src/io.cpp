#include "klein/io.hpp"

#include "klein/errors.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <cstring>
#include <ostream>

namespace klein {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

namespace {

void require_sink(std::ostream& sink) {
    if (!sink) throw SinkFailure("sink stream in failed state");
}

Vec3 face_normal(const TriangleMesh& m, const std::array<int, 3>& t) {
    const Vec3 n = (m.vertices[t[1]] - m.vertices[t[0]])
                       .cross(m.vertices[t[2]] - m.vertices[t[0]]);
    const double len = n.norm();
    return len > 0.0 ? n * (1.0 / len) : Vec3{0.0, 0.0, 0.0};
}

void put_le32(std::string& out, uint32_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
    out.push_back(static_cast<char>((v >> 16) & 0xff));
    out.push_back(static_cast<char>((v >> 24) & 0xff));
}

void put_f32(std::string& out, double x) {
    const float f = static_cast<float>(x);
    uint32_t bits;
    std::memcpy(&bits, &f, sizeof(bits));
    put_le32(out, bits);
}

} // namespace

void write_obj(const TriangleMesh& m, std::ostream& sink) {
    require_sink(sink);
    std::string out;
    out.reserve(m.vertices.size() * 32);
    for (const Vec3& v : m.vertices) {
        out += "v ";
        out += format_double(v.x);
        out += ' ';
        out += format_double(v.y);
        out += ' ';
        out += format_double(v.z);
        out += '\n';
    }
    for (const Vec3& n : m.normals) {
        out += "vn ";
        out += format_double(n.x);
        out += ' ';
        out += format_double(n.y);
        out += ' ';
        out += format_double(n.z);
        out += '\n';
    }
    for (const auto& t : m.triangles) {
        out += "f ";
        out += std::to_string(t[0] + 1);
        out += ' ';
        out += std::to_string(t[1] + 1);
        out += ' ';
        out += std::to_string(t[2] + 1);
        out += '\n';
    }
    sink.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!sink) throw SinkFailure("failed writing OBJ data");
}

void write_stl_binary(const TriangleMesh& m, std::ostream& sink) {
    require_sink(sink);
    if (m.triangles.size() > 0xffffffffull)
        throw TooManyTriangles("triangle count exceeds the STL 32-bit field");
    std::string out;
    out.reserve(84 + 50 * m.triangles.size());
    std::string header = std::string(kToolName) + " " + kToolVersion +
                         " binary stl";
    header.resize(80, '\0');
    out += header;
    put_le32(out, static_cast<uint32_t>(m.triangles.size()));
    for (const auto& t : m.triangles) {
        const Vec3 n = face_normal(m, t);
        put_f32(out, n.x);
        put_f32(out, n.y);
        put_f32(out, n.z);
        for (int k = 0; k < 3; ++k) {
            const Vec3& p = m.vertices[t[k]];
            put_f32(out, p.x);
            put_f32(out, p.y);
            put_f32(out, p.z);
        }
        out.push_back('\0');
        out.push_back('\0');
    }
    sink.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!sink) throw SinkFailure("failed writing STL data");
}

void write_ply_ascii(const TriangleMesh& m, std::ostream& sink) {
    require_sink(sink);
    const bool with_normals = !m.normals.empty();
    std::string out;
    out += "ply\nformat ascii 1.0\n";
    out += "comment ";
    out += kToolName;
    out += ' ';
    out += kToolVersion;
    out += '\n';
    out += "element vertex " + std::to_string(m.vertices.size()) + '\n';
    out += "property float x\nproperty float y\nproperty float z\n";
    if (with_normals)
        out += "property float nx\nproperty float ny\nproperty float nz\n";
    out += "element face " + std::to_string(m.triangles.size()) + '\n';
    out += "property list uchar int vertex_indices\n";
    out += "end_header\n";
    for (size_t i = 0; i < m.vertices.size(); ++i) {
        const Vec3& v = m.vertices[i];
        out += format_double(v.x);
        out += ' ';
        out += format_double(v.y);
        out += ' ';
        out += format_double(v.z);
        if (with_normals) {
            const Vec3& n = m.normals[i];
            out += ' ';
            out += format_double(n.x);
            out += ' ';
            out += format_double(n.y);
            out += ' ';
            out += format_double(n.z);
        }
        out += '\n';
    }
    for (const auto& t : m.triangles) {
        out += "3 ";
        out += std::to_string(t[0]);
        out += ' ';
        out += std::to_string(t[1]);
        out += ' ';
        out += std::to_string(t[2]);
        out += '\n';
    }
    sink.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!sink) throw SinkFailure("failed writing PLY data");
}

namespace {

ordered_json closure_json(const ClosureReport& c) {
    ordered_json j;
    j["cond_i_residual"] = c.cond_i_residual;
    j["cond_i_pass"] = c.cond_i_pass;
    j["cond_ii_residual"] = c.cond_ii_residual;
    j["cond_ii_pass"] = c.cond_ii_pass;
    j["cond_iii_residual"] = c.cond_iii_residual;
    j["cond_iii_pass"] = c.cond_iii_pass;
    j["cond_iv_exponent_start"] = c.cond_iv_exponent_start;
    j["cond_iv_exponent_end"] = c.cond_iv_exponent_end;
    j["cond_iv_exponent"] = c.cond_iv_exponent;
    j["cond_iv_pass"] = c.cond_iv_pass;
    j["all_pass"] = c.all_pass;
    return j;
}

ordered_json verification_json(const VerificationReport& r) {
    ordered_json j;
    j["surface"] = r.surface_name;
    ordered_json reg;
    reg["min_det"] = r.regularity.min_det;
    reg["argmin"] = {r.regularity.argmin_u, r.regularity.argmin_v};
    reg["median_det"] = r.regularity.median_det;
    reg["pass"] = r.regularity.pass;
    j["regularity"] = reg;
    if (r.gluing) {
        ordered_json g;
        g["max_residual"] = r.gluing->max_residual;
        if (r.gluing->limit_mode) {
            g["limit_residuals"] = r.gluing->limit_residuals;
            g["limit_slope"] = r.gluing->limit_slope;
        }
        g["informational"] = r.gluing->informational;
        g["pass"] = r.gluing->pass;
        j["gluing"] = g;
    }
    if (r.closure) {
        j["closure"] = closure_json(*r.closure);
        j["closure_iv_required"] = r.closure_iv_required;
    }
    if (r.seam_tangency) {
        ordered_json st;
        st["seam_u"] = r.seam_tangency->seam_u;
        st["max_angle_radians"] = r.seam_tangency->max_angle;
        st["location_v"] = r.seam_tangency->argmax_v;
        st["pass"] = r.seam_tangency->pass;
        j["seam_tangency"] = st;
    }
    j["self_intersection_expected"] = r.self_intersection_expected;
    j["pass"] = r.pass;
    return j;
}

} // namespace

void write_report(std::ostream& sink, const RunConfig& cfg,
                  const std::optional<VerificationReport>& verification,
                  const std::optional<MeshTopologyReport>& topology,
                  const std::optional<IntersectionReport>& intersections) {
    require_sink(sink);
    ordered_json j;
    j["schema"] = 1;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    ordered_json c;
    c["surface"] = cfg.surface;
    c["params"] = cfg.params; // std::map: stable key order
    c["nu"] = cfg.nu;
    c["nv"] = cfg.nv;
    c["margin"] = cfg.margin;
    c["weld"] = cfg.weld_mesh;
    c["normals"] = cfg.with_normals;
    c["format"] = cfg.format;
    j["config"] = c;
    if (verification) j["verification"] = verification_json(*verification);
    if (topology) {
        ordered_json t;
        t["V"] = topology->V;
        t["E"] = topology->E;
        t["F"] = topology->F;
        t["euler_characteristic"] = topology->euler_characteristic;
        t["boundary_edge_count"] = topology->boundary_edge_count;
        t["boundary_loops"] = topology->boundary_loops;
        t["watertight"] = topology->watertight;
        t["orientable"] = topology->orientable;
        t["orientability_defined"] = topology->orientability_defined;
        j["topology"] = t;
    }
    if (intersections) {
        ordered_json x;
        x["intersecting_pairs"] = intersections->intersecting_pairs;
        x["pairs_tested"] = intersections->pairs_tested;
        ordered_json segs = ordered_json::array();
        for (const auto& [a, b] : intersections->sample_segments)
            segs.push_back({{a.x, a.y, a.z}, {b.x, b.y, b.z}});
        x["sample_segments"] = segs;
        j["intersections"] = x;
    }
    sink << j.dump(2) << '\n';
    if (!sink) throw SinkFailure("failed writing report");
}

} // namespace klein
