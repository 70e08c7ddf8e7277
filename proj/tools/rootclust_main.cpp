#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rootclust/io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitPrecision = 3;
constexpr int kExitVerifyFailed = 4;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw rootclust::SchemaError("--poly", "cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw rootclust::SchemaError("--out", "cannot write '" + path + "'");
    out << content;
}

int run_solve(const rootclust::RunConfig& cfg) {
    using namespace rootclust;

    if (cfg.poly_path.empty() == cfg.poly_inline.empty()) {
        std::cerr << "error: need exactly one of --poly or --poly-inline\n";
        return kExitInput;
    }
    std::string poly_text = cfg.poly_path.empty() ? cfg.poly_inline : read_file(cfg.poly_path);
    ParsedPolynomial parsed = parse_poly(poly_text);
    auto [b0_center, b0_width] = parse_box_spec(cfg.box_spec);
    Dyadic eps = parse_eps_spec(cfg.eps_spec);
    if (cfg.verify && !parsed.has_roots) {
        std::cerr << "error: --verify requires the roots-form polynomial input\n";
        return kExitInput;
    }

    SolverOptions opt;
    opt.use_newton = !cfg.no_newton;
    opt.precision_ceiling = cfg.precision_ceiling;
    opt.record_boxes = !cfg.svg_path.empty();

    auto t0 = std::chrono::steady_clock::now();
    SolveResult result = solve(parsed.poly, b0_center, b0_width, eps, opt);
    auto t1 = std::chrono::steady_clock::now();
    result.stats.wall_seconds = std::chrono::duration<double>(t1 - t0).count();

    VerificationReport report;
    bool have_report = false;
    if (cfg.verify) {
        InstanceSpec spec;
        spec.roots = parsed.roots;
        spec.lcf = parsed.lcf;
        spec.b0_center = b0_center;
        spec.b0_width = b0_width;
        spec.eps = eps;
        spec.seed = cfg.seed;
        report = verify_solution(spec, result.clusters);
        have_report = true;
    }

    std::string clusters_json =
        clusters_to_json(result, have_report ? &report : nullptr);
    if (cfg.out_path.empty()) {
        std::cout << clusters_json;
    } else {
        write_file(cfg.out_path, clusters_json);
    }
    if (!cfg.stats_path.empty()) write_file(cfg.stats_path, stats_to_json(result.stats));
    if (!cfg.svg_path.empty()) write_file(cfg.svg_path, emit_svg(result.record));

    if (have_report && !report.ok) {
        std::cerr << "verification FAILED (" << report.violations.size()
                  << " violation(s)); see the \"verification\" key of the output\n";
        return kExitVerifyFailed;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"certified root clustering for oracle polynomials"};
    app.require_subcommand(1);

    rootclust::RunConfig cfg;
    CLI::App* solve_cmd = app.add_subcommand("solve", "cluster the roots of F inside a box");
    solve_cmd->add_option("--poly", cfg.poly_path, "polynomial JSON file");
    solve_cmd->add_option("--poly-inline", cfg.poly_inline, "polynomial JSON literal");
    solve_cmd->add_option("--box", cfg.box_spec, "query box as cx,cy,w")->required();
    solve_cmd->add_option("--eps", cfg.eps_spec, "target radius (e.g. 2^-20)")->required();
    solve_cmd->add_option("--out", cfg.out_path, "clusters JSON output path");
    solve_cmd->add_option("--stats", cfg.stats_path, "run statistics JSON path");
    solve_cmd->add_option("--svg", cfg.svg_path, "subdivision rendering path");
    solve_cmd->add_flag("--no-newton", cfg.no_newton, "bisection only, no Newton steps");
    solve_cmd->add_option("--precision-ceiling", cfg.precision_ceiling,
                          "per-test precision ceiling in bits");
    solve_cmd->add_option("--seed", cfg.seed, "seed recorded with the run");
    solve_cmd->add_flag("--verify", cfg.verify,
                        "verify the output against the input roots (roots form only)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitInput;
    }

    try {
        return run_solve(cfg);
    } catch (const rootclust::SchemaError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const rootclust::ZeroLeadingCoefficient& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const rootclust::PrecisionExhausted& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecision;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
}
