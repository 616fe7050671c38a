// Command line front end: ranking, decomposition, topology and benchmark
// drivers over the hodge library. Exit codes: 0 success, 1 input error,
// 2 numerical failure.

#include <CLI11.hpp>
#include <json.hpp>

#include "hodge/hodge.hpp"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using hodge::index_t;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "1.0.0";

std::uint64_t default_seed() {
    const char* env = std::getenv("HODGERANK_SEED");
    if (!env) return 12345;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0')
        throw hodge::invalid_input("HODGERANK_SEED is not an unsigned integer: '" +
                                   std::string(env) + "'");
    return v;
}

// Empty path or "-" means stdout.
void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw hodge::invalid_input("cannot write '" + path + "'");
    out << text;
}

json report_to_json(const hodge::solve_report& r) {
    return json{{"iterations", r.iterations},
                {"converged", r.converged},
                {"final_relres", r.final_relres},
                {"matvecs", r.matvecs},
                {"seconds", r.elapsed_seconds}};
}

hodge::solve_options make_options(double tol, index_t max_iter) {
    hodge::solve_options opts;
    opts.tol = tol;
    opts.max_iter = max_iter;
    return opts;
}

struct flow_problem {
    hodge::complex2 c;
    std::vector<double> omega;
};

flow_problem load_flow(const std::string& path, bool require_weights) {
    hodge::edge_list el = hodge::read_edge_list(path);
    if (el.g.edges.empty()) throw hodge::invalid_input(path + ": no edges");
    if (require_weights && !el.has_weights)
        throw hodge::invalid_input(path + ": a weight column 'u v w' is required");
    flow_problem fp;
    fp.c = hodge::build_clique_complex(el.g);
    fp.omega = hodge::omega_from_edge_list(fp.c, el);
    return fp;
}

json decomposition_json(const hodge::complex2& c, const hodge::hodge_result& r) {
    return json{{"n0", c.n0},
                {"n1", c.n1()},
                {"n2", c.n2()},
                {"method_alpha", hodge::method_name(r.method_alpha)},
                {"method_beta", hodge::method_name(r.method_beta)},
                {"grad_norm", r.grad_norm},
                {"curl_norm", r.curl_norm},
                {"harmonic_norm", r.harmonic_norm},
                {"report_alpha", report_to_json(r.report_alpha)},
                {"report_beta", report_to_json(r.report_beta)}};
}

int run_rank(const std::string& input, const std::string& method, double tol, index_t max_iter,
             const std::string& output) {
    flow_problem fp = load_flow(input, true);
    const hodge::method m = hodge::method_from_name(method);
    hodge::hodge_result r = hodge::decompose(fp.c, fp.omega, m, make_options(tol, max_iter));

    double res2 = 0.0, omega2 = 0.0;
    for (std::size_t i = 0; i < fp.omega.size(); ++i) {
        const double d = fp.omega[i] - r.grad_part[i];
        res2 += d * d;
        omega2 += fp.omega[i] * fp.omega[i];
    }
    const double residual_norm = std::sqrt(res2);

    json out = decomposition_json(fp.c, r);
    out["alpha"] = r.alpha;
    out["ranking"] = hodge::ranking_from_alpha(r.alpha);
    out["residual_norm"] = residual_norm;
    out["consistent"] = residual_norm <= 1e-8 * std::sqrt(omega2);
    write_text(output, out.dump(2) + "\n");

    return (r.report_alpha.converged && r.report_beta.converged) ? 0 : 2;
}

int run_decompose(const std::string& input, const std::string& method, double tol,
                  index_t max_iter, const std::string& output) {
    flow_problem fp = load_flow(input, false);
    const hodge::method m = hodge::method_from_name(method);
    hodge::hodge_result r = hodge::decompose(fp.c, fp.omega, m, make_options(tol, max_iter));

    json out = decomposition_json(fp.c, r);
    out["alpha"] = r.alpha;
    out["beta"] = r.beta;
    out["grad_part"] = r.grad_part;
    out["curl_part"] = r.curl_part;
    out["harmonic"] = r.harmonic;
    write_text(output, out.dump(2) + "\n");

    return (r.report_alpha.converged && r.report_beta.converged) ? 0 : 2;
}

int run_betti(const std::string& input, index_t dense_threshold, const std::string& output) {
    hodge::edge_list el = hodge::read_edge_list(input);
    const hodge::complex2 c = hodge::build_clique_complex(el.g);
    const index_t b0 = hodge::betti(c, 0, dense_threshold);
    const index_t b1 = hodge::betti(c, 1, dense_threshold);
    const index_t b2 = hodge::betti(c, 2, dense_threshold);
    const index_t chi = hodge::euler_characteristic(c);

    json out{{"n0", c.n0},
             {"n1", c.n1()},
             {"n2", c.n2()},
             {"betti", {b0, b1, b2}},
             {"components", hodge::component_count(c)},
             {"euler_characteristic", chi},
             {"alternating_sum_matches", b0 - b1 + b2 == chi}};
    write_text(output, out.dump(2) + "\n");
    return 0;
}

int run_gen(const std::string& family, index_t n, double p, index_t k, double p_rewire,
            index_t m, std::uint64_t seed, const std::string& output) {
    hodge::graph g;
    if (family == "er") g = hodge::gen_erdos_renyi(n, p, seed);
    else if (family == "ws") g = hodge::gen_watts_strogatz(n, k, p_rewire, seed);
    else if (family == "ba") g = hodge::gen_barabasi_albert(n, m, seed);
    else g = hodge::gen_special(hodge::kind_from_name(family), n);

    hodge::write_edge_list(output, g);
    json summary{{"family", family},
                 {"n_vertices", g.n_vertices},
                 {"n_edges", g.edges.size()},
                 {"seed", seed},
                 {"path", output}};
    std::cout << summary.dump(2) << "\n";
    return 0;
}

int run_sweep(index_t n, const std::vector<double>& rhos, index_t trials, std::uint64_t seed,
              const std::string& output, const std::string& json_path) {
    auto rows = hodge::density_sweep(n, rhos, trials, seed);
    std::ostringstream csv;
    hodge::write_sweep_csv(csv, rows);
    write_text(output, csv.str());

    if (!json_path.empty()) {
        const auto t = hodge::kahle_thresholds(n);
        json out{{"n", n},
                 {"thresholds", {{"lower", t[0]}, {"middle", t[1]}, {"upper", t[2]}}},
                 {"rhos", rhos},
                 {"trials", trials},
                 {"seed", seed}};
        write_text(json_path, out.dump(2) + "\n");
    }
    return 0;
}

int run_bench(const std::string& family, index_t n, double p, index_t k, double p_rewire,
              index_t m, const std::vector<std::string>& methods, index_t trials, double tol,
              std::uint64_t seed, const std::string& output) {
    if (trials < 1) throw hodge::invalid_input("bench: need at least one trial");
    hodge::bench_config cfg;
    cfg.family = family;
    cfg.n = n;
    cfg.p = p;
    cfg.k = k;
    cfg.p_rewire = p_rewire;
    cfg.m = m;
    cfg.trials = trials;
    cfg.tol = tol;
    cfg.seed = seed;

    std::vector<hodge::method> parsed;
    for (const auto& name : methods) parsed.push_back(hodge::method_from_name(name));
    // Validate family and parameters up front so bad input is an input
    // error, not a per-row marker.
    (void)hodge::make_family_graph(cfg, seed);

    std::ostringstream out;
    out << "family,n0,n1,n2,edge_density,triangle_density,method,rel_err_grad,rel_err_curl,"
           "err_harmonic,harmonic_err_is_absolute,iters_alpha,iters_beta,secs_alpha,secs_beta,"
           "error\n";
    bool any_failed = false;
    for (hodge::method mm : parsed) {
        cfg.methods = {mm};
        try {
            auto rows = hodge::run_bench(cfg);
            std::ostringstream one;
            hodge::write_bench_csv(one, rows);
            std::string text = one.str();
            const auto nl = text.find('\n');
            std::string row = text.substr(nl + 1);
            if (!row.empty() && row.back() == '\n') row.pop_back();
            out << row << ",\n";
        } catch (const hodge::error& e) {
            any_failed = true;
            std::string msg = e.what();
            for (char& ch : msg)
                if (ch == ',' || ch == '\n') ch = ';';
            out << family << ",,,,,," << hodge::method_name(mm) << ",,,,,,,," << msg << "\n";
        }
    }
    write_text(output, out.str());
    return any_failed ? 2 : 0;
}

int run_spectral(const std::vector<std::string>& families, const std::vector<index_t>& sizes,
                 double target, std::uint64_t seed, const std::string& output) {
    std::vector<hodge::spectral_row> rows;
    for (const auto& fam : families) {
        const hodge::graph_kind kind = hodge::kind_from_name(fam);
        for (index_t n : sizes) rows.push_back(hodge::spectral_bound_row(kind, n, target, seed));
    }
    std::ostringstream csv;
    hodge::write_spectral_csv(csv, rows);
    write_text(output, csv.str());
    return 0;
}

int run_export(const std::string& input, const std::string& what, const std::string& reorder,
               const std::string& outdir, const std::string& prefix) {
    hodge::edge_list el = hodge::read_edge_list(input);
    const hodge::complex2 c = hodge::build_clique_complex(el.g);

    if (reorder != "none" && what == "boundaries")
        throw hodge::invalid_input(
            "export: --reorder applies to the square laplacians, not the boundary operators");

    std::vector<std::pair<std::string, hodge::sparse_matrix>> mats;
    if (what == "boundaries") {
        mats.emplace_back("boundary1", hodge::boundary_1(c));
        mats.emplace_back("boundary2", hodge::boundary_2(c));
    } else if (what == "laplacians" || what == "patterns") {
        mats.emplace_back("laplacian0", hodge::laplacian_0(c));
        mats.emplace_back("laplacian1", hodge::laplacian_1(c));
        mats.emplace_back("laplacian2", hodge::laplacian_2(c));
    } else {
        throw hodge::invalid_input("export: unknown --what '" + what + "'");
    }

    for (auto& [name, mat] : mats) {
        if (reorder == "none" || mat.rows() == 0) continue;
        const hodge::permutation perm =
            reorder == "degree" ? hodge::degree_order(mat) : hodge::rcm_order(mat);
        mat = hodge::symmetric_permute(mat, perm);
    }

    std::error_code ec;
    std::filesystem::create_directories(outdir, ec);
    if (ec) throw hodge::invalid_input("export: cannot create directory '" + outdir + "'");

    json stats{{"n0", c.n0},     {"n1", c.n1()},      {"n2", c.n2()},
               {"what", what},   {"reorder", reorder}, {"matrices", json::object()}};
    const bool write_files = what != "patterns";
    for (const auto& [name, mat] : mats) {
        const hodge::pattern_summary ps = hodge::pattern_stats(mat);
        json entry{{"rows", mat.rows()},
                   {"cols", mat.cols()},
                   {"nnz", ps.nnz},
                   {"bandwidth", ps.bandwidth},
                   {"profile", ps.profile}};
        if (write_files) {
            const std::string file = outdir + "/" + prefix + "_" + name + ".mtx";
            hodge::write_matrix_market(file, mat, name + " of " + input);
            entry["file"] = file;
        }
        stats["matrices"][name] = entry;
    }

    const std::string stats_path = outdir + "/" + prefix + "_stats.json";
    write_text(stats_path, stats.dump(2) + "\n");
    std::cout << stats.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Least squares ranking and Hodge decomposition on graph flows"};
    app.set_version_flag("--version", kVersion);
    app.set_config("--config", "", "Read options from a key=value config file");
    app.require_subcommand(0, 1);

    std::function<int()> action;
    int exit_code = 0;

    std::uint64_t seed = 12345;
    try {
        seed = default_seed();
    } catch (const hodge::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    // rank ------------------------------------------------------------
    std::string rank_input, rank_method = "auto", rank_output;
    double rank_tol = 1e-8;
    index_t rank_maxit = 0;
    {
        auto* sc = app.add_subcommand("rank", "Rank vertices from weighted pairwise flows");
        sc->configurable();
        sc->add_option("input", rank_input, "Edge list file 'u v w' per line")->required();
        sc->add_option("--method", rank_method,
                       "auto|cg-ne|minres-ne|cg-kkt|minres-kkt|lsqr");
        sc->add_option("--tol", rank_tol, "Relative residual target");
        sc->add_option("--max-iter", rank_maxit, "Iteration cap (0 = automatic)");
        sc->add_option("-o,--output", rank_output, "Write JSON here instead of stdout");
        sc->callback([&]() {
            action = [&]() {
                return run_rank(rank_input, rank_method, rank_tol, rank_maxit, rank_output);
            };
        });
    }

    // decompose --------------------------------------------------------
    std::string dec_input, dec_method = "auto", dec_output;
    double dec_tol = 1e-8;
    index_t dec_maxit = 0;
    {
        auto* sc = app.add_subcommand("decompose",
                                      "Split a flow into gradient, curl and harmonic parts");
        sc->configurable();
        sc->add_option("input", dec_input, "Edge list file, weights optional")->required();
        sc->add_option("--method", dec_method, "auto|cg-ne|minres-ne|cg-kkt|minres-kkt|lsqr");
        sc->add_option("--tol", dec_tol, "Relative residual target");
        sc->add_option("--max-iter", dec_maxit, "Iteration cap (0 = automatic)");
        sc->add_option("-o,--output", dec_output, "Write JSON here instead of stdout");
        sc->callback([&]() {
            action = [&]() {
                return run_decompose(dec_input, dec_method, dec_tol, dec_maxit, dec_output);
            };
        });
    }

    // betti --------------------------------------------------------------
    std::string betti_input, betti_output;
    index_t betti_dense = 2000;
    {
        auto* sc = app.add_subcommand("betti", "Betti numbers of the clique complex");
        sc->configurable();
        sc->add_option("input", betti_input, "Edge list file")->required();
        sc->add_option("--dense-threshold", betti_dense,
                       "Largest operator handled by the dense eigenvalue path");
        sc->add_option("-o,--output", betti_output, "Write JSON here instead of stdout");
        sc->callback([&]() {
            action = [&]() { return run_betti(betti_input, betti_dense, betti_output); };
        });
    }

    // gen ----------------------------------------------------------------
    std::string gen_family = "er", gen_output;
    index_t gen_n = 100, gen_k = 10, gen_m = 5;
    double gen_p = 0.1, gen_rewire = 0.3;
    std::uint64_t gen_seed = seed;
    {
        auto* sc = app.add_subcommand("gen", "Generate a graph and write its edge list");
        sc->configurable();
        sc->add_option("--family", gen_family, "er|ws|ba|path|cycle|star|wheel|complete");
        sc->add_option("--n", gen_n, "Vertex count");
        sc->add_option("--p", gen_p, "Edge probability (er)");
        sc->add_option("--k", gen_k, "Lattice degree (ws), even");
        sc->add_option("--p-rewire", gen_rewire, "Rewiring probability (ws)");
        sc->add_option("--m", gen_m, "Attachments per arrival (ba)");
        sc->add_option("--seed", gen_seed, "Random seed");
        sc->add_option("-o,--output", gen_output, "Edge list file to write")->required();
        sc->callback([&]() {
            action = [&]() {
                return run_gen(gen_family, gen_n, gen_p, gen_k, gen_rewire, gen_m, gen_seed,
                               gen_output);
            };
        });
    }

    // sweep ----------------------------------------------------------------
    index_t sweep_n = 50, sweep_trials = 5;
    std::vector<double> sweep_rhos{0.005, 0.08, 0.7};
    std::uint64_t sweep_seed = seed;
    std::string sweep_output, sweep_json;
    {
        auto* sc = app.add_subcommand("sweep",
                                      "Density sweep: Betti numbers and harmonic fractions "
                                      "of random clique complexes");
        sc->configurable();
        sc->add_option("--n", sweep_n, "Vertex count");
        sc->add_option("--rho", sweep_rhos, "Edge densities to sample");
        sc->add_option("--trials", sweep_trials, "Trials per density");
        sc->add_option("--seed", sweep_seed, "Master seed");
        sc->add_option("-o,--output", sweep_output, "CSV output (default stdout)");
        sc->add_option("--json", sweep_json, "Also write a density-threshold JSON here");
        sc->callback([&]() {
            action = [&]() {
                return run_sweep(sweep_n, sweep_rhos, sweep_trials, sweep_seed, sweep_output,
                                 sweep_json);
            };
        });
    }

    // bench ----------------------------------------------------------------
    std::string bench_family = "er", bench_output;
    index_t bench_n = 100, bench_k = 10, bench_m = 5, bench_trials = 5;
    double bench_p = 0.1, bench_rewire = 0.3, bench_tol = 1e-8;
    std::vector<std::string> bench_methods{"cg-ne", "minres-ne", "cg-kkt", "minres-kkt", "lsqr"};
    std::uint64_t bench_seed = seed;
    {
        auto* sc = app.add_subcommand("bench",
                                      "Solver benchmark on synthetic flows with known parts");
        sc->configurable();
        sc->add_option("--family", bench_family, "er|ws|ba");
        sc->add_option("--n", bench_n, "Vertex count");
        sc->add_option("--p", bench_p, "Edge probability (er)");
        sc->add_option("--k", bench_k, "Lattice degree (ws)");
        sc->add_option("--p-rewire", bench_rewire, "Rewiring probability (ws)");
        sc->add_option("--m", bench_m, "Attachments per arrival (ba)");
        sc->add_option("--methods", bench_methods, "Methods to run");
        sc->add_option("--trials", bench_trials, "Trials per method");
        sc->add_option("--tol", bench_tol, "Solver tolerance");
        sc->add_option("--seed", bench_seed, "Master seed");
        sc->add_option("-o,--output", bench_output, "CSV output (default stdout)");
        sc->callback([&]() {
            action = [&]() {
                return run_bench(bench_family, bench_n, bench_p, bench_k, bench_rewire, bench_m,
                                 bench_methods, bench_trials, bench_tol, bench_seed,
                                 bench_output);
            };
        });
    }

    // spectral ---------------------------------------------------------------
    std::vector<std::string> spec_families{"path", "cycle", "star", "wheel", "complete"};
    std::vector<index_t> spec_sizes{8, 16, 32};
    double spec_target = 1e-8;
    std::uint64_t spec_seed = seed;
    std::string spec_output;
    {
        auto* sc = app.add_subcommand("spectral",
                                      "Condition number bounds versus measured iterations");
        sc->configurable();
        sc->add_option("--families", spec_families, "path|cycle|star|wheel|complete");
        sc->add_option("--sizes", spec_sizes, "Vertex counts");
        sc->add_option("--target", spec_target, "Energy-norm error target");
        sc->add_option("--seed", spec_seed, "Random seed for the synthetic solutions");
        sc->add_option("-o,--output", spec_output, "CSV output (default stdout)");
        sc->callback([&]() {
            action = [&]() {
                return run_spectral(spec_families, spec_sizes, spec_target, spec_seed,
                                    spec_output);
            };
        });
    }

    // export --------------------------------------------------------------
    std::string exp_input, exp_what = "laplacians", exp_reorder = "none", exp_outdir = ".",
                exp_prefix = "complex";
    {
        auto* sc = app.add_subcommand("export",
                                      "Write operators as Matrix Market plus pattern stats");
        sc->configurable();
        sc->add_option("input", exp_input, "Edge list file")->required();
        sc->add_option("--what", exp_what, "boundaries|laplacians|patterns");
        sc->add_option("--reorder", exp_reorder, "none|degree|rcm (laplacians only)");
        sc->add_option("--outdir", exp_outdir, "Output directory");
        sc->add_option("--prefix", exp_prefix, "Output file prefix");
        sc->callback([&]() {
            action = [&]() {
                return run_export(exp_input, exp_what, exp_reorder, exp_outdir, exp_prefix);
            };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (!action) {
        std::cerr << app.help();
        return 1;
    }

    try {
        exit_code = action();
    } catch (const hodge::numerical_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const hodge::decomposition_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const hodge::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}
