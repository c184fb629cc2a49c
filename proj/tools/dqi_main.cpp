// Command-line front end for the DQI performance workbench: instance
// generation, spectral / exact predictors, decoder benchmarks, classical
// baseline runs, oracle simulation with predictor cross-checks, interference
// estimates, and leaderboard assembly.
//
// All randomness flows from --seed through named substreams; with a fixed
// seed every emitted value (CSV and key=value lines) is byte-reproducible.
// Wall-clock columns are informational and excluded from that guarantee.
// Exit codes: 0 success, 2 parameter error, 3 capacity error, 4 numeric
// error, 5 validation-gate failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "dqi/baselines.hpp"
#include "dqi/bitvec.hpp"
#include "dqi/decoders.hpp"
#include "dqi/errors.hpp"
#include "dqi/instance.hpp"
#include "dqi/io.hpp"
#include "dqi/numeric.hpp"
#include "dqi/oracle.hpp"
#include "dqi/report.hpp"
#include "dqi/rng.hpp"
#include "dqi/spectrum.hpp"
#include "dqi/weight_enum.hpp"

using namespace dqi;
using nlohmann::json;

namespace {

std::string instance_id(const MaxLinsatInstance& inst) {
    std::ostringstream os;
    os << (inst.meta.generator.empty() ? "instance" : inst.meta.generator) << "-m"
       << inst.m << "-n" << inst.n << "-s" << inst.meta.seed;
    return os.str();
}

// Empty path means stdout.
void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty())
        std::cout << text;
    else
        write_file_atomic(out_path, text);
}

std::string kv(const std::string& key, double value) {
    return key + "=" + format_float(value) + "\n";
}

// Uniform allowed-set size (r = 1 when p = 2); the closed-form predictors
// need all constraints to allow the same number of values.
uint32_t uniform_allowed(const MaxLinsatInstance& inst) {
    if (inst.p == 2) return 1;
    require(!inst.f_sets.empty(), ErrorKind::parameter, "instance has no allowed sets");
    const size_t r = inst.f_sets[0].size();
    for (const auto& f : inst.f_sets)
        require(f.size() == r, ErrorKind::parameter,
                "allowed-set sizes differ; no uniform closed-form prediction");
    return static_cast<uint32_t>(r);
}

// "a", or "a:b", or "a:b:step" (inclusive endpoints).
std::vector<size_t> parse_grid(const std::string& text) {
    std::vector<long long> parts;
    std::string cur;
    std::istringstream is(text);
    while (std::getline(is, cur, ':')) {
        try {
            parts.push_back(std::stoll(cur));
        } catch (const std::exception&) {
            throw_parameter("grid: expected integers separated by ':'");
        }
    }
    require(!parts.empty() && parts.size() <= 3, ErrorKind::parameter,
            "grid: use START[:STOP[:STEP]]");
    for (long long v : parts)
        require(v >= 0, ErrorKind::parameter, "grid: negative value");
    const long long start = parts[0];
    const long long stop = parts.size() >= 2 ? parts[1] : parts[0];
    const long long step = parts.size() == 3 ? parts[2] : 1;
    require(step >= 1, ErrorKind::parameter, "grid: step must be >= 1");
    require(stop >= start, ErrorKind::parameter, "grid: stop below start");
    std::vector<size_t> grid;
    for (long long v = start; v <= stop; v += step) grid.push_back(static_cast<size_t>(v));
    return grid;
}

std::vector<double> parse_fractions(const std::string& text) {
    std::vector<double> out;
    if (text.empty()) return out;
    std::istringstream is(text);
    std::string cur;
    while (std::getline(is, cur, ',')) {
        try {
            out.push_back(std::stod(cur));
        } catch (const std::exception&) {
            throw_parameter("fraction list: expected comma-separated numbers");
        }
    }
    return out;
}

void print_instance_summary(const MaxLinsatInstance& inst, bool dual_distance) {
    std::ostringstream os;
    os << "generator=" << inst.meta.generator << "\n"
       << "m=" << inst.m << "\n"
       << "n=" << inst.n << "\n"
       << "p=" << inst.p << "\n"
       << "max_constraint_degree=" << inst.max_constraint_degree() << "\n"
       << "max_variable_degree=" << inst.max_variable_degree() << "\n";
    if (dual_distance) {
        require(inst.p == 2, ErrorKind::parameter,
                "--dual-distance needs a binary instance");
        const auto dist = weight_distribution(bit_b(inst));
        os << "dual_distance=" << dist.min_distance() << "\n";
    }
    std::cerr << os.str();
}

void write_instance(const MaxLinsatInstance& inst, const std::string& out) {
    if (out.empty())
        std::cout << instance_to_json_string(inst);
    else
        save_instance(inst, out);
}

struct GenGallagerArgs {
    uint32_t k = 3, d = 6;
    size_t b = 1;
    uint64_t seed = 0;
    bool plant = false, dual_distance = false;
    std::string out;
};

struct GenIrregularArgs {
    size_t m = 0, n = 0;
    std::string dist_path;
    uint64_t seed = 0;
    bool dual_distance = false;
    std::string out;
};

struct GenOpiArgs {
    uint32_t p = 7;
    size_t n = 1;
    uint64_t seed = 0;
    bool plant = false;
    std::string out;
};

struct PredictArgs {
    double mu = 0.0, rho = 0.0, zeta = 0.0;
    size_t m = 0, ell = 0;
    uint32_t p = 2, r = 1;
    std::string instance_path, weights_out;
};

struct DecodeBenchArgs {
    std::string instance_path, decoder = "bw", grid = "1";
    uint64_t trials = 200, seed = 0;
    std::string out, report_path;
    size_t bp_iters = 50;
    double bp_damping = 0.0, bp_q = 0.0; // 0 = automatic l/m
    bool bp_min_sum = false;
    size_t bw_cap = SIZE_MAX;
};

struct OptArgs {
    std::string instance_path, algo = "sa";
    uint64_t seed = 0;
    size_t sweeps = 5000;
    double beta_start = 0.0, beta_end = -1.0; // -1 = per-algorithm default
    size_t trials = 10;
    double flip_prob = 0.0;
    std::string r_grid, csv_path, report_path;
};

struct SimulateArgs {
    std::string instance_path, check = "tridiag", export_base;
    size_t ell = 0, shots = 0;
    uint64_t seed = 0, budget = kStateBudget;
    double tol = 1e-9;
};

struct ZetaArgs {
    std::string instance_path, mode = "heuristic", out;
    size_t ell = 0, m = 0, n = 0;
    uint64_t budget = 1ull << 44;
};

void run_gen_gallager(const GenGallagerArgs& a) {
    const auto inst = gen_gallager(a.k, a.d, a.b, a.seed, a.plant);
    print_instance_summary(inst, a.dual_distance);
    write_instance(inst, a.out);
}

void run_gen_irregular(const GenIrregularArgs& a) {
    const auto dist = load_distribution(a.dist_path);
    const auto inst = gen_irregular(a.m, a.n, dist, a.seed);
    print_instance_summary(inst, a.dual_distance);
    write_instance(inst, a.out);
}

void run_gen_opi(const GenOpiArgs& a) {
    const auto inst = gen_opi(a.p, a.n, a.seed, a.plant);
    print_instance_summary(inst, false);
    write_instance(inst, a.out);
}

void write_weights(const std::vector<double>& w, const std::string& path) {
    if (path.empty()) return;
    std::ostringstream os;
    os << "k,w\n";
    for (size_t k = 0; k < w.size(); ++k) os << k << ',' << format_float(w[k]) << '\n';
    write_file_atomic(path, os.str());
}

void run_predict_semicircle(const PredictArgs& a) {
    std::cout << kv("phi_max", semicircle(a.mu, a.rho));
}

void run_predict_beyond(const PredictArgs& a) {
    const auto b = beyond_distance_bounds(a.mu, a.zeta);
    std::cout << kv("avg_f_over_m", b.avg_f_over_m) << kv("worst_f_over_m", b.worst_f_over_m)
              << kv("avg_s_over_m", b.avg_s_over_m)
              << kv("worst_s_over_m", b.worst_s_over_m)
              << "worst_clamped=" << (b.worst_clamped ? 1 : 0) << "\n";
}

void run_predict_tridiag(const PredictArgs& a) {
    require(a.m >= 1, ErrorKind::parameter, "tridiag: need --m >= 1");
    TridiagonalSpec spec;
    spec.m = a.m;
    spec.ell = a.ell;
    spec.d = tridiag_slope(a.p, a.r);
    const auto eig = principal_eig(build_tridiagonal(spec));
    const double s = expected_satisfied(a.m, a.ell, a.p, a.r, eig.w);
    std::cout << kv("lambda", eig.lambda) << kv("s", s)
              << kv("s_over_m", s / static_cast<double>(a.m));
    write_weights(eig.w, a.weights_out);
}

void run_predict_exact(const PredictArgs& a) {
    const auto inst = load_instance(a.instance_path);
    require(inst.p == 2, ErrorKind::parameter,
            "exact prediction enumerates binary dual codes only");
    const auto dist = weight_distribution(bit_b(inst));
    const auto of = optimal_fraction_exact(inst.m, a.ell, dist);
    std::cout << kv("lambda", of.lambda) << kv("s", of.expected_satisfied)
              << kv("s_over_m", of.expected_satisfied / static_cast<double>(inst.m));
    write_weights(of.w, a.weights_out);
}

void run_decode_bench(const DecodeBenchArgs& a) {
    const auto inst = load_instance(a.instance_path);
    const auto grid = parse_grid(a.grid);
    require(a.decoder == "bw" || a.decoder == "bp", ErrorKind::parameter,
            "decoder must be bw or bp");
    const std::string id = instance_id(inst);

    SparseParity sp;
    if (a.decoder == "bp") sp = sparse_parity(inst);

    std::ostringstream csv;
    csv << "decoder,instance-id,l,trials,failures,rate,wilson_lower,wilson_upper\n";
    std::vector<ReportRow> rows;
    for (size_t l : grid) {
        const uint64_t lseed = Rng::substream(a.seed, "decode-bench", l).next_u64();
        DecodeFn fn;
        if (a.decoder == "bw") {
            const size_t cap = a.bw_cap;
            fn = [cap](const MaxLinsatInstance& i, const FpVector& s) {
                return bw_decode(i, s, cap);
            };
        } else {
            BpConfig cfg;
            cfg.q = a.bp_q > 0.0 ? a.bp_q
                                 : static_cast<double>(std::max<size_t>(l, 1)) /
                                       static_cast<double>(inst.m);
            cfg.max_iters = a.bp_iters;
            cfg.damping = a.bp_damping;
            cfg.min_sum = a.bp_min_sum;
            fn = [&sp, cfg](const MaxLinsatInstance&, const FpVector& s) {
                std::vector<uint8_t> sb(s.begin(), s.end());
                return bp_decode(sp, sb, cfg);
            };
        }
        const auto r = failure_rate(inst, l, a.trials, lseed, fn);
        csv << a.decoder << ',' << id << ',' << l << ',' << r.trials << ',' << r.failures
            << ',' << format_float(r.rate) << ',' << format_float(r.interval.lower) << ','
            << format_float(r.interval.upper) << '\n';
        rows.push_back({a.decoder, id, "failure_rate_l" + std::to_string(l), r.rate,
                        0.5 * (r.interval.upper - r.interval.lower)});
    }
    emit(csv.str(), a.out);

    if (!a.report_path.empty()) {
        ExperimentReport rep;
        rep.experiment_id = "decode-bench";
        json cfg{{"instance", a.instance_path}, {"decoder", a.decoder},
                 {"l_grid", a.grid},           {"trials", a.trials},
                 {"seed", a.seed},             {"bp_iters", a.bp_iters},
                 {"bp_damping", a.bp_damping}, {"bp_min_sum", a.bp_min_sum},
                 {"bp_q", a.bp_q}};
        rep.config_echo = cfg.dump();
        rep.rows = std::move(rows);
        save_report(rep, a.report_path);
    }
}

void run_opt(const OptArgs& a) {
    const auto inst = load_instance(a.instance_path);
    const std::string id = instance_id(inst);

    RunResult r;
    if (a.algo == "sa" || a.algo == "ia") {
        AnnealSchedule sched;
        sched.sweeps = a.sweeps;
        sched.beta_start = a.beta_start;
        sched.beta_end = a.beta_end >= 0.0 ? a.beta_end : (a.algo == "sa" ? 3.0 : 5.0);
        r = a.algo == "sa" ? simulated_annealing(inst, sched, a.seed)
                           : irregular_annealing(inst, sched, a.seed);
    } else if (a.algo == "greedy") {
        r = greedy(inst, a.seed);
    } else if (a.algo == "truncation") {
        r = truncation(inst, a.trials, a.seed);
    } else if (a.algo == "advrand") {
        r = advrand(inst, a.flip_prob, parse_fractions(a.r_grid), a.seed);
    } else {
        throw_parameter("algo must be one of sa, ia, greedy, truncation, advrand");
    }

    std::cout << "algorithm=" << r.algorithm << "\n"
              << kv("phi", r.phi) << "sweeps=" << r.sweeps << "\n";
    if (!a.csv_path.empty()) append_run_csv(a.csv_path, id, r);
    if (!a.report_path.empty()) {
        ExperimentReport rep;
        rep.experiment_id = "opt";
        json cfg{{"instance", a.instance_path}, {"algo", a.algo},
                 {"seed", a.seed},              {"sweeps", a.sweeps},
                 {"beta_start", a.beta_start},  {"beta_end", a.beta_end},
                 {"trials", a.trials},          {"flip_prob", a.flip_prob},
                 {"r_grid", a.r_grid}};
        rep.config_echo = cfg.dump();
        rep.rows = {{r.algorithm, id, "phi", r.phi, 0.0}};
        save_report(rep, a.report_path);
    }
}

void run_simulate(const SimulateArgs& a) {
    const auto inst = load_instance(a.instance_path);
    require(a.check == "tridiag" || a.check == "exact" || a.check == "none",
            ErrorKind::parameter, "--check must be tridiag, exact, or none");

    std::vector<double> w;
    double predicted = 0.0;
    if (a.check == "exact") {
        require(inst.p == 2, ErrorKind::parameter,
                "exact prediction enumerates binary dual codes only");
        const auto dist = weight_distribution(bit_b(inst));
        const auto of = optimal_fraction_exact(inst.m, a.ell, dist);
        w = of.w;
        predicted = of.expected_satisfied;
    } else {
        const uint32_t r = uniform_allowed(inst);
        TridiagonalSpec spec;
        spec.m = inst.m;
        spec.ell = a.ell;
        spec.d = tridiag_slope(inst.p, r);
        const auto eig = principal_eig(build_tridiagonal(spec));
        w = eig.w;
        predicted = expected_satisfied(inst.m, a.ell, inst.p, r, w);
    }

    const Expectation e = exact_expectation(inst, a.ell, w, a.budget);
    std::cout << kv("s_mean", e.s) << kv("phi", e.s / static_cast<double>(inst.m))
              << kv("norm2", e.norm2);

    if (a.shots > 0 || !a.export_base.empty()) {
        const auto table = amplitudes(inst, a.ell, w, a.budget);
        if (!a.export_base.empty()) save_state_table(table, a.export_base);
        if (a.shots > 0) {
            const auto ranks = sample(table, a.shots, a.seed);
            KahanSum acc;
            for (uint64_t rank : ranks) {
                const auto x = decode_assignment(inst, rank);
                acc.add(static_cast<double>(satisfied_count(inst, x)));
            }
            std::cout << kv("shots_mean",
                            acc.value() / static_cast<double>(a.shots));
        }
    }

    if (a.check != "none") {
        const double diff = std::fabs(e.s - predicted);
        std::cout << kv("predicted", predicted) << kv("diff", diff);
        require(diff <= a.tol, ErrorKind::validation,
                "simulated mean differs from the " + a.check + " prediction by " +
                    format_float(diff));
    }
}

void run_zeta(const ZetaArgs& a) {
    require(a.mode == "exact" || a.mode == "heuristic", ErrorKind::parameter,
            "--mode must be exact or heuristic");
    std::ostringstream csv;
    if (a.mode == "exact") {
        require(!a.instance_path.empty(), ErrorKind::parameter,
                "exact mode needs --instance");
        const auto inst = load_instance(a.instance_path);
        const auto z = zeta_exact(inst, a.ell, a.budget);
        csv << "k,zeta_k\n";
        for (size_t k = 0; k < z.per_k.size(); ++k)
            csv << k << ',' << format_float(z.per_k[k]) << '\n';
        std::cerr << kv("zeta", z.zeta);
    } else {
        size_t m = a.m, n = a.n;
        if (!a.instance_path.empty()) {
            const auto inst = load_instance(a.instance_path);
            m = inst.m;
            n = inst.n;
        }
        require(m >= 1 && n >= 1, ErrorKind::parameter,
                "heuristic mode needs --instance or --m/--n");
        const auto z = zeta_heuristic_all(m, n, a.ell);
        csv << "k,log2_zeta_k\n";
        for (size_t k = 0; k < z.per_k.size(); ++k)
            csv << k << ',' << format_float(z.per_k[k]) << '\n';
        std::cerr << kv("log2_zeta_max", z.zeta);
    }
    emit(csv.str(), a.out);
}

void run_leaderboard(const std::vector<std::string>& csv_paths, const std::string& out) {
    require(!csv_paths.empty(), ErrorKind::parameter, "leaderboard: need --csv files");
    std::vector<std::string> texts;
    for (const auto& p : csv_paths) texts.push_back(read_file(p));
    emit(leaderboard_table(texts), out);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"DQI performance prediction and benchmarking workbench"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate instances");
    gen->require_subcommand(1);
    GenGallagerArgs gg;
    auto* gen_gal = gen->add_subcommand("gallager", "layered regular binary instance");
    gen_gal->add_option("--k", gg.k, "constraint degree")->required();
    gen_gal->add_option("--d", gg.d, "variable degree")->required();
    gen_gal->add_option("--b", gg.b, "block size (m = b*d, n = b*k)")->required();
    gen_gal->add_option("--seed", gg.seed, "generator seed");
    gen_gal->add_flag("--plant", gg.plant, "plant a satisfying assignment");
    gen_gal->add_flag("--dual-distance", gg.dual_distance, "also report the dual distance");
    gen_gal->add_option("--out", gg.out, "output path (stdout when omitted)");

    GenIrregularArgs gi;
    auto* gen_irr = gen->add_subcommand("irregular", "configuration-model instance");
    gen_irr->add_option("--m", gi.m, "constraints")->required();
    gen_irr->add_option("--n", gi.n, "variables")->required();
    gen_irr->add_option("--dist", gi.dist_path, "degree distribution JSON")->required();
    gen_irr->add_option("--seed", gi.seed, "generator seed");
    gen_irr->add_flag("--dual-distance", gi.dual_distance, "also report the dual distance");
    gen_irr->add_option("--out", gi.out, "output path (stdout when omitted)");

    GenOpiArgs go;
    auto* gen_opi_cmd = gen->add_subcommand("opi", "geometric-row instance over F_p");
    gen_opi_cmd->add_option("--p", go.p, "odd prime modulus")->required();
    gen_opi_cmd->add_option("--n", go.n, "variables")->required();
    gen_opi_cmd->add_option("--seed", go.seed, "generator seed");
    gen_opi_cmd->add_flag("--plant", go.plant, "plant a satisfying assignment");
    gen_opi_cmd->add_option("--out", go.out, "output path (stdout when omitted)");

    // predict
    auto* predict = app.add_subcommand("predict", "closed-form and exact predictors");
    predict->require_subcommand(1);
    PredictArgs ps, pt, pe, pb;
    auto* p_semi = predict->add_subcommand("semicircle", "asymptotic satisfied fraction");
    p_semi->add_option("--mu", ps.mu, "degree fraction l/m")->required();
    p_semi->add_option("--rho", ps.rho, "allowed fraction r/p")->required();
    auto* p_tri = predict->add_subcommand("tridiag", "finite-size spectral prediction");
    p_tri->add_option("--m", pt.m, "constraints")->required();
    p_tri->add_option("--l", pt.ell, "polynomial degree")->required();
    p_tri->add_option("--p", pt.p, "field size");
    p_tri->add_option("--r", pt.r, "allowed-set size");
    p_tri->add_option("--weights-out", pt.weights_out, "write optimal weights CSV");
    auto* p_ex = predict->add_subcommand("exact", "dual-enumeration prediction");
    p_ex->add_option("--instance", pe.instance_path, "instance JSON")->required();
    p_ex->add_option("--l", pe.ell, "polynomial degree")->required();
    p_ex->add_option("--weights-out", pe.weights_out, "write optimal weights CSV");
    auto* p_bey = predict->add_subcommand("beyond", "interference-tolerant bounds");
    p_bey->add_option("--mu", pb.mu, "degree fraction l/m")->required();
    p_bey->add_option("--zeta", pb.zeta, "interference fraction")->required();

    // decode-bench
    DecodeBenchArgs db;
    auto* bench = app.add_subcommand("decode-bench", "Monte-Carlo decoder failure rates");
    bench->add_option("--instance", db.instance_path, "instance JSON")->required();
    bench->add_option("--decoder", db.decoder, "bw or bp");
    bench->add_option("--l-grid", db.grid, "error weights START[:STOP[:STEP]]")->required();
    bench->add_option("--trials", db.trials, "trials per weight");
    bench->add_option("--seed", db.seed, "benchmark seed");
    bench->add_option("--out", db.out, "CSV path (stdout when omitted)");
    bench->add_option("--report", db.report_path, "JSON report sidecar path");
    bench->add_option("--bp-iters", db.bp_iters, "BP rounds");
    bench->add_option("--bp-damping", db.bp_damping, "BP damping in [0,1)");
    bench->add_option("--bp-q", db.bp_q, "BP channel prior (default l/m)");
    bench->add_flag("--bp-min-sum", db.bp_min_sum, "use the min-sum check rule");
    bench->add_option("--bw-cap", db.bw_cap, "max error weight searched");

    // opt
    OptArgs oa;
    auto* opt = app.add_subcommand("opt", "run a classical baseline");
    opt->add_option("--instance", oa.instance_path, "instance JSON")->required();
    opt->add_option("--algo", oa.algo, "sa, ia, greedy, truncation, advrand")->required();
    opt->add_option("--seed", oa.seed, "run seed");
    opt->add_option("--sweeps", oa.sweeps, "anneal sweeps");
    opt->add_option("--beta-start", oa.beta_start, "initial inverse temperature");
    opt->add_option("--beta-end", oa.beta_end, "final inverse temperature");
    opt->add_option("--trials", oa.trials, "truncation trials");
    opt->add_option("--flip-prob", oa.flip_prob, "advrand flip probability");
    opt->add_option("--r-grid", oa.r_grid,
                    "advrand fix fractions, comma separated (empty = exhaustive)");
    opt->add_option("--csv", oa.csv_path, "append a run row to this CSV");
    opt->add_option("--report", oa.report_path, "JSON report sidecar path");

    // simulate
    SimulateArgs sa;
    auto* sim = app.add_subcommand("simulate", "oracle state simulation + cross-check");
    sim->add_option("--instance", sa.instance_path, "instance JSON")->required();
    sim->add_option("--l", sa.ell, "polynomial degree")->required();
    sim->add_option("--check", sa.check, "tridiag, exact, or none");
    sim->add_option("--tol", sa.tol, "mismatch gate");
    sim->add_option("--shots", sa.shots, "also sample this many measurements");
    sim->add_option("--seed", sa.seed, "sampling seed");
    sim->add_option("--budget", sa.budget, "max enumerated assignments");
    sim->add_option("--export", sa.export_base, "state table path base (.f64/.json)");

    // zeta
    ZetaArgs za;
    auto* zeta = app.add_subcommand("zeta", "interference estimates");
    zeta->add_option("--instance", za.instance_path, "instance JSON");
    zeta->add_option("--l", za.ell, "decoding radius parameter")->required();
    zeta->add_option("--mode", za.mode, "exact or heuristic");
    zeta->add_option("--m", za.m, "constraints (heuristic without instance)");
    zeta->add_option("--n", za.n, "variables (heuristic without instance)");
    zeta->add_option("--budget", za.budget, "exact-mode enumeration budget");
    zeta->add_option("--out", za.out, "CSV path (stdout when omitted)");

    // leaderboard
    std::vector<std::string> lb_csvs;
    std::string lb_out;
    auto* lb = app.add_subcommand("leaderboard", "merge run CSVs into a sorted table");
    lb->add_option("--csv", lb_csvs, "run CSV file (repeatable)")->required();
    lb->add_option("--out", lb_out, "output path (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (gen_gal->parsed()) run_gen_gallager(gg);
        if (gen_irr->parsed()) run_gen_irregular(gi);
        if (gen_opi_cmd->parsed()) run_gen_opi(go);
        if (p_semi->parsed()) run_predict_semicircle(ps);
        if (p_tri->parsed()) run_predict_tridiag(pt);
        if (p_ex->parsed()) run_predict_exact(pe);
        if (p_bey->parsed()) run_predict_beyond(pb);
        if (bench->parsed()) run_decode_bench(db);
        if (opt->parsed()) run_opt(oa);
        if (sim->parsed()) run_simulate(sa);
        if (zeta->parsed()) run_zeta(za);
        if (lb->parsed()) run_leaderboard(lb_csvs, lb_out);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
