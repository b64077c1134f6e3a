#include "klein/io.hpp"

#include "klein/errors.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace klein {

namespace {

std::map<std::string, double> parse_params(const std::string& spec) {
    std::map<std::string, double> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw UnknownParameter("expected k=v in --params, got '" + item +
                                   "'");
        out[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
    }
    return out;
}

int run_list() {
    for (const SurfaceDescriptor& d : catalog_list()) {
        std::cout << d.name << "\n  " << d.source << "\n";
        if (!d.defaults.empty()) {
            std::cout << "  defaults:";
            for (const auto& [k, v] : d.defaults)
                std::cout << ' ' << k << '=' << format_double(v);
            std::cout << "\n";
        }
        std::cout << "  " << d.notes << "\n";
    }
    return 0;
}

int run_eval(const std::string& name, const std::string& params, double u,
             double v) {
    const ParametricSurface s = make_surface(name, parse_params(params));
    const Vec3 p = surface_eval(s, u, v);
    std::cout << format_double(p.x) << ' ' << format_double(p.y) << ' '
              << format_double(p.z) << "\n";
    return 0;
}

int run_generate(RunConfig cfg) {
    const ParametricSurface s = make_surface(cfg.surface, cfg.params);
    TriangleMesh mesh = tessellate(s, cfg.nu, cfg.nv, cfg.margin);
    if (cfg.weld_mesh) mesh = weld(mesh, s);
    if (cfg.with_normals) mesh = compute_normals(mesh);

    std::ofstream out(cfg.output_path, std::ios::binary);
    if (!out) throw SinkFailure("cannot open " + cfg.output_path);
    if (cfg.format == "obj") write_obj(mesh, out);
    else if (cfg.format == "stl") write_stl_binary(mesh, out);
    else if (cfg.format == "ply") write_ply_ascii(mesh, out);
    else throw ParameterOutOfRange("unknown format '" + cfg.format + "'");
    out.close();

    if (!cfg.report_path.empty()) {
        const MeshTopologyReport topo = euler_characteristic(mesh);
        std::ofstream rep(cfg.report_path, std::ios::binary);
        if (!rep) throw SinkFailure("cannot open " + cfg.report_path);
        write_report(rep, cfg, std::nullopt, topo, std::nullopt);
    }
    return 0;
}

int run_verify(RunConfig cfg) {
    const ParametricSurface s = make_surface(cfg.surface, cfg.params);
    VerifyConfig vcfg;
    const VerificationReport rep = full_verify(s, vcfg);
    if (!cfg.report_path.empty()) {
        std::ofstream out(cfg.report_path, std::ios::binary);
        if (!out) throw SinkFailure("cannot open " + cfg.report_path);
        write_report(out, cfg, rep, std::nullopt, std::nullopt);
    }
    std::cout << rep.surface_name << ": "
              << (rep.pass ? "all checks pass" : "checks FAILED") << "\n";
    std::cout << "  regularity: min det " << format_double(rep.regularity.min_det)
              << (rep.regularity.pass ? " (pass)" : " (FAIL)") << "\n";
    if (rep.gluing)
        std::cout << "  gluing: max residual "
                  << format_double(rep.gluing->max_residual)
                  << (rep.gluing->informational
                          ? " (informational)"
                          : (rep.gluing->pass ? " (pass)" : " (FAIL)"))
                  << "\n";
    if (rep.closure)
        std::cout << "  closure: conditions i-iv "
                  << (rep.closure->all_pass ? "pass" : "not all satisfied")
                  << ", exponent " << format_double(rep.closure->cond_iv_exponent)
                  << "\n";
    if (rep.seam_tangency)
        std::cout << "  seam tangency at u="
                  << format_double(rep.seam_tangency->seam_u) << ": max angle "
                  << format_double(rep.seam_tangency->max_angle)
                  << (rep.seam_tangency->pass ? " (pass)" : " (FAIL)") << "\n";
    return rep.pass ? 0 : 2;
}

} // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"Klein bottle immersion catalog, verifier, and mesher"};
    app.require_subcommand(1);

    auto* list = app.add_subcommand("list", "print the surface catalog");

    std::string name, params;
    double u = 0.0, v = 0.0;
    auto* eval = app.add_subcommand("eval", "evaluate a surface point");
    eval->add_option("surface", name)->required();
    eval->add_option("--u", u)->required();
    eval->add_option("--v", v)->required();
    eval->add_option("--params", params, "comma-separated k=v overrides");

    RunConfig cfg;
    auto* gen = app.add_subcommand("generate", "tessellate and export a mesh");
    gen->add_option("surface", cfg.surface)->required();
    std::string gen_params;
    gen->add_option("--params", gen_params, "comma-separated k=v overrides");
    gen->add_option("--nu", cfg.nu);
    gen->add_option("--nv", cfg.nv);
    gen->add_option("--margin", cfg.margin);
    gen->add_option("--out", cfg.output_path)->required();
    gen->add_option("--format", cfg.format)
        ->check(CLI::IsMember({"obj", "stl", "ply"}));
    gen->add_flag("--weld", cfg.weld_mesh);
    gen->add_flag("--normals", cfg.with_normals);
    gen->add_option("--report", cfg.report_path);

    RunConfig vcfg_run;
    auto* ver = app.add_subcommand("verify", "run the verification checks");
    ver->add_option("surface", vcfg_run.surface)->required();
    std::string ver_params;
    ver->add_option("--params", ver_params, "comma-separated k=v overrides");
    ver->add_option("--report", vcfg_run.report_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 1;
    }

    try {
        if (list->parsed()) return run_list();
        if (eval->parsed()) return run_eval(name, params, u, v);
        if (gen->parsed()) {
            cfg.params = parse_params(gen_params);
            return run_generate(cfg);
        }
        if (ver->parsed()) {
            vcfg_run.params = parse_params(ver_params);
            return run_verify(vcfg_run);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

} // namespace klein
