// Command-line front end: generation, pointwise analysis, spectrum estimation
// and genericity experiments over wavelet-series coefficient fields, with
// reproducible seeded configs and machine-readable CSV/JSON outputs.
//
// Exit codes: 0 success, 1 usage/config error, 2 negative mathematical result
// (a NotFound covering is an answer, not a failure).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "wavediv/besov.hpp"
#include "wavediv/covering.hpp"
#include "wavediv/csv.hpp"
#include "wavediv/divergence.hpp"
#include "wavediv/field_io.hpp"
#include "wavediv/generators.hpp"
#include "wavediv/rng.hpp"
#include "wavediv/spectrum.hpp"
#include "wavediv/wavelet.hpp"

namespace {

using nlohmann::json;
using nlohmann::ordered_json;
using namespace wavediv;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNegative = 2;

void write_text(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

/// Resolved-config sidecar for CSV outputs; JSON outputs embed theirs.
void write_run_config(const std::string& out_path, const ordered_json& config) {
    if (out_path == "-") return;
    write_text(out_path + ".run.json", config.dump(1) + "\n");
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> cli_or_config) {
    if (cli_or_config) return *cli_or_config;
    if (const char* env = std::getenv("WAVEDIV_SEED")) return std::strtoull(env, nullptr, 10);
    return 0;
}

struct SystemSpec {
    std::string name = "haar";
    int d = 1;
    int gens = 1;
};

WaveletSystem build_system(const SystemSpec& spec) { return make_system(spec.name, spec.d, spec.gens); }

BesovParams params_from_json(const json& cfg) {
    BesovParams p;
    p.s = cfg.value("s", 0.5);
    p.p = cfg.contains("p") ? exponent_from_json(cfg.at("p")) : 2.0;
    p.q = cfg.contains("q") ? exponent_from_json(cfg.at("q")) : 2.0;
    p.d = cfg.value("d", 1);
    return p;
}

ordered_json params_to_json(const BesovParams& p) {
    ordered_json out;
    out["s"] = p.s;
    out["p"] = exponent_to_json(p.p);
    out["q"] = exponent_to_json(p.q);
    out["d"] = p.d;
    return out;
}

DyadicCovering covering_for(const WaveletSystem& system, const std::string& covering_path,
                            const json* inline_covering) {
    if (!covering_path.empty()) {
        std::ifstream in(covering_path);
        if (!in) throw std::runtime_error("cannot open covering file " + covering_path);
        json doc;
        in >> doc;
        return covering_from_json(doc);
    }
    if (inline_covering != nullptr) return covering_from_json(*inline_covering);
    CoveringSearchOptions opts;
    opts.max_depth = 1;
    opts.c0 = 1.0;
    opts.grid_per_cube = 8;
    auto result = find_dyadic_covering(system, opts);
    if (!result.covering) {
        opts.max_depth = 3;
        opts.c0 = 0.25;
        result = find_dyadic_covering(system, opts);
    }
    if (!result.covering)
        throw std::runtime_error("no dyadic covering found for system '" + system.name() +
                                 "'; supply one explicitly");
    return *result.covering;
}

std::vector<std::vector<double>> read_points_file(const std::string& path, int d) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open points file " + path);
    std::vector<std::vector<double>> points;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<double> x;
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ';')) x.push_back(std::stod(tok));
        if (static_cast<int>(x.size()) != d)
            throw std::runtime_error("points file row has wrong dimension");
        points.push_back(std::move(x));
    }
    return points;
}

std::string join_coords(std::span<const double> x) {
    std::string s;
    for (std::size_t c = 0; c < x.size(); ++c) {
        if (c > 0) s += ';';
        s += fmt17(x[c]);
    }
    return s;
}

// ---------------------------------------------------------------------------

int cmd_check_covering(const SystemSpec& sys_spec, int max_depth, double c0, int grid,
                       const std::string& out_path) {
    auto system = build_system(sys_spec);
    CoveringSearchOptions opts;
    opts.max_depth = max_depth;
    opts.c0 = c0;
    opts.grid_per_cube = grid;
    auto result = find_dyadic_covering(system, opts);

    if (!result.covering) {
        ordered_json report;
        report["found"] = false;
        report["system"] = system.name();
        report["witness"] = result.witness;
        report["best_c0"] = result.best_c0;
        write_text(out_path, report.dump(1) + "\n");
        std::cerr << "no covering of depth <= " << max_depth << " at c0 = " << c0
                  << "; witness grid point " << join_coords(result.witness) << "\n";
        return kExitNegative;
    }

    auto doc = covering_to_json(*result.covering);
    ordered_json meta;
    meta["system"] = system.name();
    meta["max_depth"] = max_depth;
    meta["grid_per_cube"] = grid;
    meta["best_c0_at_depth"] = result.best_c0;
    doc["meta"] = std::move(meta);
    write_text(out_path, doc.dump(1) + "\n");
    return kExitOk;
}

int cmd_generate(const std::string& config_path, const std::string& covering_path,
                 const std::string& out_path) {
    std::ifstream in(config_path);
    if (!in) throw std::runtime_error("cannot open config " + config_path);
    json cfg;
    in >> cfg;

    const std::string kind = cfg.at("kind").get<std::string>();
    BesovParams params = params_from_json(cfg);
    const int jmax = cfg.value("Jmax", 12);
    std::optional<std::uint64_t> seed_cfg;
    if (cfg.contains("seed")) seed_cfg = cfg.at("seed").get<std::uint64_t>();
    const std::uint64_t seed = resolve_seed(seed_cfg);

    SystemSpec sys_spec;
    if (cfg.contains("system")) {
        if (cfg.at("system").is_string())
            sys_spec.name = cfg.at("system").get<std::string>();
        else {
            sys_spec.name = cfg.at("system").value("name", "haar");
            sys_spec.gens = cfg.at("system").value("gens", 1);
        }
    }
    sys_spec.d = params.d;

    ordered_json resolved;
    resolved["kind"] = kind;
    const ordered_json params_doc = params_to_json(params);
    for (const auto& [key, value] : params_doc.items()) resolved[key] = value;
    resolved["Jmax"] = jmax;
    resolved["seed"] = seed;
    resolved["log_convention"] = "log2";
    resolved["system"] = sys_spec.name;

    CoefficientField field;
    if (kind == "deterministic") {
        field = deterministic_e(params, jmax, cfg.value("n_gens", 1));
    } else if (kind == "saturating") {
        auto system = build_system(sys_spec);
        auto covering = covering_for(system, covering_path,
                                     cfg.contains("covering") ? &cfg.at("covering") : nullptr);
        SaturatingConfig sat{params, covering, jmax, seed, cfg.value("n_gens", system.n_gens())};
        field = saturating_random(sat);
        resolved["covering"] = covering_to_json(covering);
        resolved["blocks"] = {{"M", covering.depth()}, {"first_block", 1}};
    } else if (kind == "lineability") {
        auto a = cfg.at("a").get<std::vector<double>>();
        auto k = cfg.at("k").get<std::vector<double>>();
        field = lineability_combination(params, a, k, jmax, cfg.value("n_gens", 1));
        resolved["a"] = a;
        resolved["k"] = k;
    } else if (kind == "point") {
        auto system = build_system(sys_spec);
        auto covering = covering_for(system, covering_path,
                                     cfg.contains("covering") ? &cfg.at("covering") : nullptr);
        auto x0 = cfg.at("x0").get<std::vector<double>>();
        field = point_divergent(params, system, covering, x0, jmax);
        resolved["covering"] = covering_to_json(covering);
        resolved["x0"] = x0;
    } else if (kind == "residual") {
        auto system = build_system(sys_spec);
        auto covering = covering_for(system, covering_path,
                                     cfg.contains("covering") ? &cfg.at("covering") : nullptr);
        const int n = cfg.at("n").get<int>();
        auto f_n = canonical_finite_field(params, n, covering.depth());
        auto witness = residual_witness(params, covering.depth(), f_n, n, jmax);
        field = std::move(witness.center);
        resolved["n"] = n;
        resolved["N_n"] = witness.n_cutoff;
        resolved["radius"] = witness.radius;
    } else if (kind == "holder") {
        const int n = cfg.at("n").get<int>();
        CoefficientField source(params.d, 0, BesovParams{params.s, kInf, kInf, params.d}, {});
        if (cfg.contains("source")) source = read_field_file(cfg.at("source").get<std::string>());
        field = holder_residual_field(params.s, n, jmax, source, cfg.value("n_gens", 1));
        resolved["n"] = n;
    } else {
        throw std::runtime_error("unknown generator kind '" + kind + "'");
    }

    if (out_path == "-") {
        write_field(std::cout, field, &resolved);
    } else {
        write_field_file(out_path, field, &resolved);
    }
    return kExitOk;
}

int cmd_analyze(const std::string& field_path, const SystemSpec& sys_spec,
                const std::string& points_path, int grid_bits, int j_min,
                const std::string& mode, const std::string& out_path) {
    auto field = read_field_file(field_path);
    SystemSpec spec = sys_spec;
    spec.d = field.dim();
    auto system = build_system(spec);
    if (system.dim() != field.dim())
        throw std::runtime_error("field/system dimension mismatch");

    EstimatorSettings settings;
    settings.j_min = j_min;
    settings.mode = fit_mode_from_string(mode);

    std::vector<std::vector<double>> points;
    if (!points_path.empty()) {
        points = read_points_file(points_path, field.dim());
    } else {
        const std::int64_t per_side = std::int64_t{1} << grid_bits;
        std::int64_t n = 1;
        for (int c = 0; c < field.dim(); ++c) n *= per_side;
        const double h = std::exp2(-static_cast<double>(grid_bits));
        for (std::int64_t pi = 0; pi < n; ++pi) {
            std::vector<double> x(static_cast<std::size_t>(field.dim()));
            std::int64_t rem = pi;
            for (int c = 0; c < field.dim(); ++c) {
                x[static_cast<std::size_t>(c)] = (static_cast<double>(rem % per_side) + 0.5) * h;
                rem /= per_side;
            }
            points.push_back(std::move(x));
        }
    }

    auto profiles = divergence_profiles(field, system, points, settings);

    std::ostringstream csv;
    csv << "x,j,M_j,P_j,delta_hat,mode\n";
    for (const auto& prof : profiles) {
        const std::string xs = join_coords(prof.x);
        for (int j = 0; j <= field.jmax(); ++j)
            csv << xs << ',' << j << ',' << fmt17(prof.scale_max[static_cast<std::size_t>(j)])
                << ',' << fmt17(prof.partial_sums[static_cast<std::size_t>(j)]) << ",,\n";
        csv << xs << ",,,," << fmt17(prof.delta_hat) << ',' << to_string(prof.mode) << '\n';
    }
    write_text(out_path, csv.str());

    ordered_json run;
    run["command"] = "analyze";
    run["field"] = field_path;
    run["system"] = spec.name;
    run["j_min"] = j_min;
    run["mode"] = mode;
    run["points"] = points_path.empty() ? ordered_json(grid_bits) : ordered_json(points_path);
    write_run_config(out_path, run);
    return kExitOk;
}

int cmd_spectrum(const std::string& field_path, const SystemSpec& sys_spec, int grid_bits,
                 const std::vector<double>& gammas, int box_lo, int box_hi, int j_min,
                 const std::string& mode, const std::string& out_path) {
    auto field = read_field_file(field_path);
    SystemSpec spec = sys_spec;
    spec.d = field.dim();
    auto system = build_system(spec);

    SpectrumSettings settings;
    settings.grid_bits = grid_bits;
    settings.gamma_grid = gammas.empty() ? default_gamma_grid(field.besov()) : gammas;
    if (box_lo >= 0 && box_hi >= box_lo)
        for (int b = box_lo; b <= box_hi; ++b) settings.box_scales.push_back(b);
    settings.estimator.j_min = j_min;
    settings.estimator.mode = fit_mode_from_string(mode);
    if (static_cast<int>(settings.box_scales.size()) > 0 &&
        static_cast<int>(settings.box_scales.size()) < 3)
        throw std::runtime_error("need at least 3 box scales");

    auto est = estimate_spectrum(field, system, settings);
    auto counts = coefficient_count_spectrum(field, field.besov(), est.gamma_grid);

    std::ostringstream csv;
    csv << "gamma,dim_boxcount,dim_coeffcount,dim_theory,ci_low,ci_high\n";
    for (std::size_t g = 0; g < est.gamma_grid.size(); ++g) {
        const auto theory = theoretical_spectrum(field.besov(), est.gamma_grid[g]);
        csv << fmt17(est.gamma_grid[g]) << ',' << fmt17(est.dims[g]) << ','
            << fmt17(counts[g].defined ? counts[g].slope : std::nan("")) << ','
            << fmt17(theory ? *theory : std::nan("")) << ',' << fmt17(est.ci_low[g]) << ','
            << fmt17(est.ci_high[g]) << '\n';
    }
    write_text(out_path, csv.str());

    ordered_json run;
    run["command"] = "spectrum";
    run["field"] = field_path;
    run["system"] = spec.name;
    run["grid_bits"] = grid_bits;
    run["j_min"] = j_min;
    run["mode"] = mode;
    run["gammas"] = est.gamma_grid;
    run["box_scales"] = est.box_scales;
    write_run_config(out_path, run);
    return kExitOk;
}

int cmd_experiment(const std::string& config_path, const std::string& out_path) {
    std::ifstream in(config_path);
    if (!in) throw std::runtime_error("cannot open config " + config_path);
    json cfg;
    in >> cfg;

    ExperimentConfig config;
    config.params = params_from_json(cfg);
    config.jmax = cfg.value("Jmax", 12);
    config.trials = cfg.value("trials", 5);
    if (config.trials < 1) throw std::runtime_error("experiment: trials must be >= 1");
    std::optional<std::uint64_t> seed_cfg;
    if (cfg.contains("seed")) seed_cfg = cfg.at("seed").get<std::uint64_t>();
    config.root_seed = resolve_seed(seed_cfg);
    config.n_test_points = cfg.value("points", 100);
    config.tol_min = cfg.value("tol_min", 0.30);
    config.tol_median = cfg.value("tol_median", 0.20);
    config.tol_slope = cfg.value("tol_slope", 0.35);
    config.estimator.j_min = cfg.value("j_min", 4);
    config.estimator.mode = fit_mode_from_string(cfg.value("mode", "comp-ratio"));

    SystemSpec sys_spec;
    sys_spec.name = cfg.value("system", "haar");
    sys_spec.d = config.params.d;
    auto system = build_system(sys_spec);
    config.n_gens = system.n_gens();
    config.covering = covering_for(system, cfg.value("covering_file", ""),
                                   cfg.contains("covering") ? &cfg.at("covering") : nullptr);

    std::vector<CoefficientField> bases;
    if (cfg.contains("base_fields")) {
        for (const auto& path : cfg.at("base_fields"))
            bases.push_back(read_field_file(path.get<std::string>()));
    } else {
        bases.emplace_back(config.params.d, config.jmax, config.params,
                           std::vector<std::vector<FieldEntry>>{});
    }

    auto report = genericity_experiment(bases, system, config);

    ordered_json doc;
    doc["config"] = {{"Jmax", config.jmax},
                     {"trials", config.trials},
                     {"seed", config.root_seed},
                     {"points", config.n_test_points},
                     {"system", sys_spec.name},
                     {"mode", to_string(config.estimator.mode)},
                     {"tol_min", config.tol_min},
                     {"tol_median", config.tol_median},
                     {"tol_slope", config.tol_slope}};
    const ordered_json params_doc = params_to_json(config.params);
    for (const auto& [key, value] : params_doc.items()) doc["config"][key] = value;
    auto trials = ordered_json::array();
    for (const auto& trial : report.trials) {
        ordered_json t;
        t["seed"] = trial.seed;
        auto fields = ordered_json::array();
        for (const auto& ind : trial.per_field) {
            ordered_json f;
            f["min_ok"] = ind.min_ok;
            f["median_ok"] = ind.median_ok;
            f["slopes_ok"] = ind.slopes_ok;
            f["min_delta"] = ind.min_delta;
            f["median_delta"] = ind.median_delta;
            fields.push_back(std::move(f));
        }
        t["fields"] = std::move(fields);
        trials.push_back(std::move(t));
    }
    doc["trials"] = std::move(trials);
    doc["pass_rates"] = report.pass_rates;
    write_text(out_path, doc.dump(1) + "\n");
    return kExitOk;
}

int cmd_norm(const std::string& field_path, std::optional<double> s_override,
             const std::string& p_override, const std::string& q_override,
             const std::string& profile_csv, const std::vector<double>& gammas) {
    auto field = read_field_file(field_path);
    BesovParams params = field.besov();
    if (s_override) params.s = *s_override;
    if (!p_override.empty()) params.p = p_override == "inf" ? kInf : std::stod(p_override);
    if (!q_override.empty()) params.q = q_override == "inf" ? kInf : std::stod(q_override);

    auto weights = default_compact_weights(field.jmax());
    std::cout << "besov_norm " << fmt17(besov_norm(field, params)) << "\n";
    std::cout << "weighted_norm " << fmt17(weighted_norm(field, params, weights)) << "\n";
    std::cout << "sup_coefficient_bound " << fmt17(sup_coefficient_bound(field, params)) << "\n";
    std::cout << "compact_member " << (in_compact_subset(field, params, weights) ? 1 : 0) << "\n";
    if (!profile_csv.empty()) {
        std::ostringstream csv;
        write_scale_profile_csv(csv, field, params, gammas);
        write_text(profile_csv, csv.str());
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"wavelet series divergence laboratory"};
    app.require_subcommand(1);

    // check-covering
    auto* cc = app.add_subcommand("check-covering", "search for a dyadic covering");
    SystemSpec cc_sys;
    int cc_depth = 2, cc_grid = 8;
    double cc_c0 = 0.5;
    std::string cc_out = "-";
    cc->add_option("--system", cc_sys.name, "haar|schauder|indicator|db4")->required();
    cc->add_option("--d", cc_sys.d, "space dimension");
    cc->add_option("--gens", cc_sys.gens, "generator count (indicator system)");
    cc->add_option("--max-depth", cc_depth, "largest candidate scale")->required();
    cc->add_option("--c0", cc_c0, "lower-bound constant")->required();
    cc->add_option("--grid", cc_grid, "verification grid points per smallest cube");
    cc->add_option("-o,--out", cc_out, "output path ('-' = stdout)");

    // generate
    auto* gen = app.add_subcommand("generate", "construct a coefficient field");
    std::string gen_cfg, gen_cov, gen_out = "-";
    gen->add_option("--config", gen_cfg, "generator config JSON")->required();
    gen->add_option("--covering", gen_cov, "covering JSON path");
    gen->add_option("-o,--out", gen_out, "output field path");

    // analyze
    auto* an = app.add_subcommand("analyze", "pointwise divergence profiles");
    std::string an_field, an_points, an_out = "-", an_mode = "max-ratio";
    SystemSpec an_sys;
    int an_bits = 8, an_jmin = 4;
    an->add_option("--field", an_field)->required();
    an->add_option("--system", an_sys.name)->required();
    an->add_option("--gens", an_sys.gens);
    an->add_option("--points", an_points, "points file (one x per line, ';'-joined coords)");
    an->add_option("--grid-bits", an_bits, "evaluation grid 2^bits per axis");
    an->add_option("--j-min", an_jmin);
    an->add_option("--mode", an_mode, "max-ratio|record-slope|comp-ratio");
    an->add_option("-o,--out", an_out);

    // spectrum
    auto* sp = app.add_subcommand("spectrum", "divergence spectrum estimate");
    std::string sp_field, sp_out = "-", sp_mode = "comp-ratio";
    SystemSpec sp_sys;
    int sp_bits = 10, sp_boxlo = -1, sp_boxhi = -1, sp_jmin = 4;
    std::vector<double> sp_gammas;
    sp->add_option("--field", sp_field)->required();
    sp->add_option("--system", sp_sys.name)->required();
    sp->add_option("--gens", sp_sys.gens);
    sp->add_option("--grid-bits", sp_bits);
    sp->add_option("--gammas", sp_gammas, "gamma grid (default: 9 across the band)");
    sp->add_option("--box-lo", sp_boxlo);
    sp->add_option("--box-hi", sp_boxhi);
    sp->add_option("--j-min", sp_jmin);
    sp->add_option("--mode", sp_mode);
    sp->add_option("-o,--out", sp_out);

    // experiment
    auto* ex = app.add_subcommand("experiment", "Monte Carlo genericity runs");
    std::string ex_cfg, ex_out = "-";
    ex->add_option("--config", ex_cfg)->required();
    ex->add_option("-o,--out", ex_out);

    // norm
    auto* nm = app.add_subcommand("norm", "sequence-space diagnostics for a field");
    std::string nm_field, nm_p, nm_q, nm_csv;
    std::optional<double> nm_s;
    std::vector<double> nm_gammas;
    nm->add_option("--field", nm_field)->required();
    nm->add_option("--s", nm_s);
    nm->add_option("--p", nm_p, "override p (number or 'inf')");
    nm->add_option("--q", nm_q, "override q (number or 'inf')");
    nm->add_option("--profile-csv", nm_csv, "also emit per-scale profile CSV");
    nm->add_option("--gammas", nm_gammas, "count thresholds for the profile CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (cc->parsed()) return cmd_check_covering(cc_sys, cc_depth, cc_c0, cc_grid, cc_out);
        if (gen->parsed()) return cmd_generate(gen_cfg, gen_cov, gen_out);
        if (an->parsed())
            return cmd_analyze(an_field, an_sys, an_points, an_bits, an_jmin, an_mode, an_out);
        if (sp->parsed())
            return cmd_spectrum(sp_field, sp_sys, sp_bits, sp_gammas, sp_boxlo, sp_boxhi,
                                sp_jmin, sp_mode, sp_out);
        if (ex->parsed()) return cmd_experiment(ex_cfg, ex_out);
        if (nm->parsed()) return cmd_norm(nm_field, nm_s, nm_p, nm_q, nm_csv, nm_gammas);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
