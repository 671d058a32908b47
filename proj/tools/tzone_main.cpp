// tzone: command-line front end for the target-zone diffusion toolkit.
//
// Subcommands cover the full pipeline: simulate SDE paths, estimate binned
// drift/volatility, fit the local target-zone model, run the nested LR test,
// export the analytic solution curve and the diffusion profile, backtest the
// threshold strategy, and `reproduce` the whole fixture pipeline end to end.
// Every invocation writes a manifest with the resolved parameter set so runs
// can be repeated bit-identically.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <string>
#include <vector>

#include "tzone/backtest.hpp"
#include "tzone/data_io.hpp"
#include "tzone/errors.hpp"
#include "tzone/hindered_diffusion.hpp"
#include "tzone/km_estimator.hpp"
#include "tzone/krugman.hpp"
#include "tzone/model_fit.hpp"
#include "tzone/process.hpp"
#include "tzone/simulate.hpp"
#include "tzone/time_series.hpp"
#include "tzone/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json manifest_base(const std::string& subcommand) {
    json m;
    m["tool"] = "tzone";
    m["version"] = tzone::kVersion;
    m["subcommand"] = subcommand;
    return m;
}

void write_manifest(const fs::path& where, const json& m) {
    std::ofstream out(where);
    if (!out) throw tzone::DataError("cannot write manifest: " + where.string());
    out << m.dump(2) << "\n";
}

fs::path manifest_path_for(const fs::path& out_file) {
    fs::path p = out_file;
    p += ".manifest.json";
    return p;
}

// Precondition failures on loaded content (too few samples, empty bins) are
// data errors at the CLI boundary, not usage errors.
template <class Fn>
auto data_scope(Fn&& fn) {
    try {
        return fn();
    } catch (const std::invalid_argument& e) {
        throw tzone::DataError(e.what());
    }
}

void write_text(const fs::path& where, const std::string& text) {
    std::ofstream out(where);
    if (!out) throw tzone::DataError("cannot open for writing: " + where.string());
    out << text << "\n";
}

struct SimulateArgs {
    std::string model = "krugman";
    double drift_f = 0.0;
    double vol_g = 5.42e-4;
    double c = 1.0;
    double f = 1.0;
    double alpha = 1.40e-5;
    double beta = 5.42e-3;
    double barrier = std::log(1.20);
    std::int64_t steps = 100000;
    std::int64_t paths = 1;
    std::uint64_t seed = 0;
    double initial = std::log(1.205);
    double tau = 1.0 / 360.0;
    std::string boundary = "reflect";
    std::string time_format = "hours";
    int threads = 1;
    std::string out_dir = "sim_out";
};

tzone::ProcessSpec spec_from_args(const SimulateArgs& a) {
    if (a.model == "gbm") return tzone::ProcessSpec::gbm(a.drift_f, a.vol_g);
    if (a.model == "physical") return tzone::ProcessSpec::physical(a.c, a.f, a.vol_g, a.barrier);
    if (a.model == "krugman") return tzone::ProcessSpec::krugman_local(a.alpha, a.beta, a.barrier);
    if (a.model == "hindered") return tzone::ProcessSpec::hindered(a.beta, a.barrier);
    throw std::invalid_argument("unknown model: " + a.model);
}

json spec_params_json(const SimulateArgs& a) {
    json p;
    p["model"] = a.model;
    if (a.model == "gbm") {
        p["drift_f"] = a.drift_f;
        p["vol_g"] = a.vol_g;
    } else if (a.model == "physical") {
        p["c"] = a.c;
        p["f"] = a.f;
        p["vol_g"] = a.vol_g;
        p["barrier"] = a.barrier;
    } else {
        if (a.model == "krugman") p["alpha"] = a.alpha;
        p["beta"] = a.beta;
        p["barrier"] = a.barrier;
    }
    return p;
}

int run_simulate(const SimulateArgs& a) {
    const tzone::ProcessSpec spec = spec_from_args(a);
    tzone::SimConfig cfg;
    cfg.n_steps = a.steps;
    cfg.n_paths = a.paths;
    cfg.seed = a.seed;
    cfg.initial_s = a.initial;
    cfg.tau_hours = a.tau;
    cfg.threads = a.threads;
    cfg.boundary = a.boundary == "clamp" ? tzone::BoundaryPolicy::Clamp
                                         : tzone::BoundaryPolicy::Reflect;

    fs::create_directories(a.out_dir);
    const auto ensemble = tzone::simulate(spec, cfg);
    const auto fmt = a.time_format == "iso" ? tzone::TimeFormat::Iso8601
                                            : tzone::TimeFormat::FractionalHours;
    std::vector<std::string> outputs;
    for (std::size_t p = 0; p < ensemble.size(); ++p) {
        char name[32];
        std::snprintf(name, sizeof name, "path_%04zu.csv", p);
        const fs::path file = fs::path(a.out_dir) / name;
        tzone::write_series_csv(ensemble[p], file.string(), fmt);
        outputs.push_back(file.string());
    }

    json m = manifest_base("simulate");
    m["parameters"] = spec_params_json(a);
    m["parameters"]["steps"] = a.steps;
    m["parameters"]["paths"] = a.paths;
    m["parameters"]["initial"] = a.initial;
    m["parameters"]["tau"] = a.tau;
    m["parameters"]["boundary"] = a.boundary;
    m["parameters"]["time_format"] = a.time_format;
    m["seed"] = a.seed;
    m["inputs"] = json::array();
    m["outputs"] = outputs;
    write_manifest(fs::path(a.out_dir) / "manifest.json", m);
    std::cout << "simulate: wrote " << ensemble.size() << " path(s) to " << a.out_dir << "\n";
    return 0;
}

struct EstimateArgs {
    std::string in;
    std::string mask;
    int bins = 100;
    int min_count = 10;
    int subsample = 1;
    std::vector<double> range;
    std::string out = "estimate.csv";
};

int run_estimate(const EstimateArgs& a) {
    tzone::TimeSeries series = tzone::read_series_csv(a.in);
    std::vector<std::uint8_t> mask;
    if (!a.mask.empty()) {
        if (a.subsample > 1)
            throw std::invalid_argument("--mask and --subsample cannot be combined");
        mask = tzone::read_mask_csv(a.mask);
    }
    if (a.subsample > 1) series = tzone::subsample(series, a.subsample);
    tzone::BinConfig cfg;
    cfg.n_bins = a.bins;
    cfg.min_count = a.min_count;
    if (!a.range.empty()) {
        if (a.range.size() != 2) throw std::invalid_argument("--range needs exactly two values");
        cfg.range = {a.range[0], a.range[1]};
    }
    const auto est = data_scope([&] { return tzone::estimate(series, cfg, mask); });
    tzone::write_estimate_csv(est, a.out);

    json m = manifest_base("estimate");
    m["parameters"] = {{"bins", a.bins},
                       {"min_count", a.min_count},
                       {"subsample", a.subsample},
                       {"tau", est.tau_hours}};
    if (!a.range.empty()) m["parameters"]["range"] = a.range;
    m["inputs"] = json::array({a.in});
    if (!a.mask.empty()) m["inputs"].push_back(a.mask);
    m["outputs"] = {a.out};
    write_manifest(manifest_path_for(a.out), m);
    std::cout << "estimate: " << est.bins.size() << " bins over " << est.n_increments
              << " increments -> " << a.out << "\n";
    return 0;
}

struct FitArgs {
    std::string in;
    double barrier = std::log(1.20);
    double tau = 1.0 / 360.0;
    bool count_weighted = false;
    std::string out = "fit.json";
};

int run_fit(const FitArgs& a) {
    const auto est = tzone::read_estimate_csv(a.in, a.tau);
    const auto report = data_scope([&] { return tzone::fit_model(est, a.barrier, a.count_weighted); });
    write_text(a.out, report.to_json());

    json m = manifest_base("fit");
    m["parameters"] = {{"barrier", a.barrier},
                       {"tau", a.tau},
                       {"count_weighted", a.count_weighted}};
    m["inputs"] = {a.in};
    m["outputs"] = {a.out};
    write_manifest(manifest_path_for(a.out), m);
    std::cout << "fit: beta=" << report.beta_hat << " alpha=" << report.alpha_hat << " -> "
              << a.out << "\n";
    return 0;
}

struct LrArgs {
    std::string in;
    double barrier = std::log(1.20);
    double mu_lo = 0.0;
    double mu_hi = 3.0;
    std::string out = "lrtest.json";
};

int run_lrtest(const LrArgs& a) {
    const tzone::TimeSeries series = tzone::read_series_csv(a.in);
    tzone::LRTestOptions opts;
    opts.mu_lo = a.mu_lo;
    opts.mu_hi = a.mu_hi;
    const auto report = data_scope([&] { return tzone::lr_test(series, a.barrier, opts); });
    write_text(a.out, report.to_json());

    json m = manifest_base("lrtest");
    m["parameters"] = {{"barrier", a.barrier}, {"mu_lo", a.mu_lo}, {"mu_hi", a.mu_hi}};
    m["inputs"] = {a.in};
    m["outputs"] = {a.out};
    write_manifest(manifest_path_for(a.out), m);
    std::cout << "lrtest: mu_hat=" << report.mu_hat << " p=" << report.p_value << " -> " << a.out
              << "\n";
    return 0;
}

struct CurveArgs {
    double m = 0.0;
    double gamma = 1.0;
    double sigma = 1.0;
    double barrier = 0.0;
    double v_min = 0.0, v_max = 0.0;  // default derived from rho when equal
    int points = 200;
    std::string out = "krugman_curve.csv";
};

tzone::KrugmanParams emit_curve_csv(const CurveArgs& a, double& v_min, double& v_max) {
    const auto p = tzone::solve_pasting(a.m, a.gamma, a.sigma, a.barrier);
    v_min = a.v_min;
    v_max = a.v_max;
    if (v_min == v_max) {
        v_min = p.v_lower - 1.0 / p.rho;
        v_max = p.v_lower + 5.0 / p.rho;
    }
    const auto curve = tzone::sample_curve(p, v_min, v_max, a.points);
    std::ofstream out(a.out);
    if (!out) throw tzone::DataError("cannot open for writing: " + a.out);
    out << "v,s,free_float\n";
    char buf[128];
    for (const auto& row : curve) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", row.v, row.s, row.free_float);
        out << buf;
    }
    return p;
}

int run_curve(const CurveArgs& a) {
    double v_min, v_max;
    const auto p = emit_curve_csv(a, v_min, v_max);

    json m = manifest_base("krugman-curve");
    m["parameters"] = {{"m", a.m},       {"gamma", a.gamma},   {"sigma", a.sigma},
                       {"barrier", a.barrier}, {"v_min", v_min}, {"v_max", v_max},
                       {"points", a.points}};
    m["derived"] = {{"rho", p.rho}, {"pasting_a", p.pasting_a}, {"v_lower", p.v_lower}};
    m["inputs"] = json::array();
    m["outputs"] = {a.out};
    write_manifest(manifest_path_for(a.out), m);
    std::cout << "krugman-curve: rho=" << p.rho << " v_lower=" << p.v_lower << " -> " << a.out
              << "\n";
    return 0;
}

struct ProfileArgs {
    double gap_min = 0.01;
    double gap_max = 1000.0;
    int points = 200;
    std::string out = "diffusion_profile.csv";
};

void emit_profile_csv(const ProfileArgs& a) {
    if (!(a.gap_min > 0.0) || !(a.gap_max > a.gap_min))
        throw std::invalid_argument("need 0 < gap-min < gap-max");
    // Normalized environment: D/D0 depends only on gap/R.
    tzone::ParticleEnv env{6.0 * M_PI, 1.0, 1.0, 0.0};
    std::ofstream out(a.out);
    if (!out) throw tzone::DataError("cannot open for writing: " + a.out);
    out << "gap_over_R,lambda_lorentz,D_over_D0_lorentz,linear_approx\n";
    char buf[160];
    const double log_lo = std::log(a.gap_min), log_hi = std::log(a.gap_max);
    for (int i = 0; i < a.points; ++i) {
        const double gap = std::exp(log_lo + (log_hi - log_lo) * i / (a.points - 1));
        const double lambda = tzone::lorentz_lambda(env, gap);
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", gap, lambda, 1.0 / lambda,
                      8.0 * gap / 9.0);
        out << buf;
    }
}

int run_profile(const ProfileArgs& a) {
    emit_profile_csv(a);

    json m = manifest_base("diffusion-profile");
    m["parameters"] = {{"gap_min", a.gap_min}, {"gap_max", a.gap_max}, {"points", a.points}};
    m["inputs"] = json::array();
    m["outputs"] = {a.out};
    write_manifest(manifest_path_for(a.out), m);
    std::cout << "diffusion-profile: " << a.points << " points -> " << a.out << "\n";
    return 0;
}

struct BacktestArgs {
    std::string in;
    double s_eq = std::log(1.205);
    double cost_pips = 1.5;
    double size = 1.0;
    std::string out = "backtest.json";
    std::string trade_log;
};

int run_backtest(const BacktestArgs& a) {
    const tzone::TimeSeries series = tzone::read_series_csv(a.in);
    tzone::StrategyConfig cfg;
    cfg.s_eq = a.s_eq;
    cfg.cost_pips = a.cost_pips;
    cfg.position_size = a.size;
    const auto report = data_scope([&] { return tzone::run_strategy(series, cfg); });
    write_text(a.out, report.to_json());
    if (!a.trade_log.empty()) tzone::write_trade_log_csv(series, report, a.trade_log);

    json m = manifest_base("backtest");
    m["parameters"] = {{"s_eq", a.s_eq}, {"cost_pips", a.cost_pips}, {"size", a.size}};
    m["inputs"] = {a.in};
    m["outputs"] = json::array({a.out});
    if (!a.trade_log.empty()) m["outputs"].push_back(a.trade_log);
    write_manifest(manifest_path_for(a.out), m);
    std::cout << "backtest: trades=" << report.n_trades << " net=" << report.net_pnl << " -> "
              << a.out << "\n";
    return 0;
}

struct IngestArgs {
    std::string in;
    std::string data_dir;
    double window = 10.0;
    int max_gap_slots = 5;
    std::string out = "series.csv";
    std::string mask_out;
};

// Relative tick files resolve against --data-dir, falling back to the
// TZONE_DATA_DIR environment variable.
std::string resolve_input(const std::string& in, const std::string& data_dir_flag) {
    if (fs::exists(in)) return in;
    std::string dir = data_dir_flag;
    if (dir.empty()) {
        if (const char* env = std::getenv("TZONE_DATA_DIR")) dir = env;
    }
    if (!dir.empty()) {
        const fs::path joined = fs::path(dir) / in;
        if (fs::exists(joined)) return joined.string();
    }
    return in;
}

int run_ingest(const IngestArgs& a) {
    const std::string input = resolve_input(a.in, a.data_dir);
    const auto loaded = tzone::load_ticks(input);
    const auto cg = tzone::coarse_grain(loaded.ticks, a.window);
    tzone::write_series_csv(cg.series, a.out);
    if (!a.mask_out.empty())
        tzone::write_mask_csv(tzone::gap_mask(cg, a.max_gap_slots), a.mask_out);

    std::int64_t carried = 0;
    for (auto flag : cg.carried) carried += flag;
    json m = manifest_base("ingest");
    m["parameters"] = {{"window_seconds", a.window}, {"max_gap_slots", a.max_gap_slots}};
    m["inputs"] = {input};
    m["outputs"] = json::array({a.out});
    if (!a.mask_out.empty()) m["outputs"].push_back(a.mask_out);
    m["stats"] = {{"ticks", loaded.ticks.size()},
                  {"malformed", loaded.n_malformed},
                  {"slots", cg.series.size()},
                  {"carried_slots", carried}};
    write_manifest(manifest_path_for(a.out), m);
    std::cout << "ingest: " << loaded.ticks.size() << " ticks -> " << cg.series.size()
              << " slots (" << carried << " carried) -> " << a.out << "\n";
    return 0;
}

struct ReproduceArgs {
    std::string out_dir = "reproduce_out";
    std::uint64_t seed = 2033;
    std::int64_t steps = 1000000;
    int threads = 1;
};

// The one-command pipeline on the bundled synthetic fixture: simulate the
// target-zone series with the fitted parameters (beta 5.42e-3, alpha 1.40e-5),
// estimate, fit, LR-test, backtest, and export both figure datasets.
int run_reproduce(const ReproduceArgs& a) {
    const double barrier = std::log(1.20);
    const double beta = 5.42e-3;
    const double alpha = 1.40e-5;
    fs::create_directories(a.out_dir);
    const fs::path dir(a.out_dir);

    SimulateArgs sim;
    sim.model = "krugman";
    sim.alpha = alpha;
    sim.beta = beta;
    sim.barrier = barrier;
    sim.steps = a.steps;
    sim.seed = a.seed;
    sim.initial = barrier + 0.005;
    sim.tau = 1.0 / 360.0;
    sim.threads = a.threads;
    const tzone::ProcessSpec spec = spec_from_args(sim);
    tzone::SimConfig cfg;
    cfg.n_steps = sim.steps;
    cfg.seed = sim.seed;
    cfg.initial_s = sim.initial;
    cfg.tau_hours = sim.tau;
    const tzone::TimeSeries series = tzone::simulate_path(spec, cfg);
    tzone::write_series_csv(series, (dir / "fixture_series.csv").string());

    tzone::BinConfig bins;
    bins.n_bins = 100;
    const auto est = tzone::estimate(series, bins);
    tzone::write_estimate_csv(est, (dir / "estimate.csv").string());

    const auto fit = tzone::fit_model(est, barrier);
    write_text(dir / "fit.json", fit.to_json());

    const auto lr = tzone::lr_test(series, barrier);
    write_text(dir / "lrtest.json", lr.to_json());

    tzone::StrategyConfig strat;
    strat.s_eq = series.values.mean();
    strat.cost_pips = 1.5;
    const auto bt = tzone::run_strategy(series, strat);
    write_text(dir / "backtest.json", bt.to_json());

    CurveArgs curve;
    curve.m = 0.0;
    curve.gamma = 2.0;
    curve.sigma = 0.5;
    curve.barrier = barrier;
    curve.out = (dir / "krugman_curve.csv").string();
    double v_min, v_max;
    emit_curve_csv(curve, v_min, v_max);

    ProfileArgs profile;
    profile.out = (dir / "diffusion_profile.csv").string();
    emit_profile_csv(profile);

    // Output names are relative to the manifest's own directory, so two runs
    // into different directories produce byte-identical trees.
    json m = manifest_base("reproduce");
    m["seed"] = a.seed;
    m["parameters"] = {{"alpha", alpha},         {"beta", beta},  {"barrier", barrier},
                       {"initial", sim.initial}, {"steps", a.steps}, {"tau", sim.tau},
                       {"bins", bins.n_bins},    {"cost_pips", strat.cost_pips},
                       {"s_eq", strat.s_eq},
                       {"curve", {{"m", curve.m}, {"gamma", curve.gamma}, {"sigma", curve.sigma}}}};
    m["inputs"] = json::array();
    m["outputs"] = {"fixture_series.csv", "estimate.csv", "fit.json", "lrtest.json",
                    "backtest.json", "krugman_curve.csv", "diffusion_profile.csv"};
    write_manifest(dir / "manifest.json", m);

    std::cout << "reproduce: beta_hat=" << fit.beta_hat << " (generating " << beta << "), p="
              << lr.p_value << ", outputs in " << a.out_dir << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tzone: constrained exchange-rate diffusion toolkit"};
    app.set_config("--config", "", "INI config; put a subcommand's flags under its [section]");
    app.fallthrough();  // `tzone estimate --config f` reaches the app-level option
    app.require_subcommand(1);
    app.set_version_flag("--version", tzone::kVersion);

    SimulateArgs sim;
    auto* c_sim = app.add_subcommand("simulate", "integrate SDE paths and export them as CSV")->configurable();
    c_sim->add_option("--model", sim.model, "gbm | physical | krugman | hindered")
        ->check(CLI::IsMember({"gbm", "physical", "krugman", "hindered"}));
    c_sim->add_option("--drift", sim.drift_f, "GBM drift (1/hour)");
    c_sim->add_option("--vol", sim.vol_g, "constant volatility for gbm/physical (1/sqrt hour)");
    c_sim->add_option("--c", sim.c, "repulsive potential constant");
    c_sim->add_option("--f", sim.f, "pressure constant");
    c_sim->add_option("--alpha", sim.alpha, "local model drift (1/hour)");
    c_sim->add_option("--beta", sim.beta, "square-root volatility scale (1/sqrt hour)");
    c_sim->add_option("--barrier", sim.barrier, "log-rate floor");
    c_sim->add_option("--steps", sim.steps, "steps per path")->check(CLI::PositiveNumber);
    c_sim->add_option("--paths", sim.paths, "number of paths")->check(CLI::PositiveNumber);
    c_sim->add_option("--seed", sim.seed, "64-bit seed");
    c_sim->add_option("--initial", sim.initial, "starting log-rate");
    c_sim->add_option("--tau", sim.tau, "step in hours (default 1/360)");
    c_sim->add_option("--boundary", sim.boundary, "reflect | clamp")
        ->check(CLI::IsMember({"reflect", "clamp"}));
    c_sim->add_option("--time-format", sim.time_format, "hours | iso")
        ->check(CLI::IsMember({"hours", "iso"}));
    c_sim->add_option("--threads", sim.threads, "path-level workers");
    c_sim->add_option("--out-dir", sim.out_dir, "output directory");

    EstimateArgs est;
    auto* c_est = app.add_subcommand("estimate", "binned drift/volatility estimates from a series")->configurable();
    c_est->add_option("--in", est.in, "input series CSV (t,s)")->required();
    c_est->add_option("--mask", est.mask, "increment validity CSV from ingest --mask-out");
    c_est->add_option("--bins", est.bins, "number of bins K");
    c_est->add_option("--min-count", est.min_count, "minimum increments per reported bin");
    c_est->add_option("--subsample", est.subsample, "keep every m-th sample");
    c_est->add_option("--range", est.range, "explicit bin range: lo hi")->expected(2);
    c_est->add_option("--out", est.out, "output estimate CSV");

    FitArgs fit;
    auto* c_fit = app.add_subcommand("fit", "fit the local target-zone model to an estimate")->configurable();
    c_fit->add_option("--in", fit.in, "input estimate CSV")->required();
    c_fit->add_option("--barrier", fit.barrier, "log-rate floor");
    c_fit->add_option("--tau", fit.tau, "tau of the estimated series (hours)");
    c_fit->add_flag("--count-weighted", fit.count_weighted, "weight bins by their counts");
    c_fit->add_option("--out", fit.out, "output report JSON");

    LrArgs lr;
    auto* c_lr = app.add_subcommand("lrtest", "nested LR test of the volatility exponent")->configurable();
    c_lr->add_option("--in", lr.in, "input series CSV (t,s)")->required();
    c_lr->add_option("--barrier", lr.barrier, "log-rate floor");
    c_lr->add_option("--mu-lo", lr.mu_lo, "exponent search lower bound");
    c_lr->add_option("--mu-hi", lr.mu_hi, "exponent search upper bound");
    c_lr->add_option("--out", lr.out, "output report JSON");

    CurveArgs curve;
    auto* c_curve = app.add_subcommand("krugman-curve", "export the s(v) solution curve")->configurable();
    c_curve->add_option("--m", curve.m, "log money supply");
    c_curve->add_option("--gamma", curve.gamma, "semi-elasticity (hours)");
    c_curve->add_option("--sigma", curve.sigma, "fundamental volatility (1/sqrt hour)");
    c_curve->add_option("--barrier", curve.barrier, "log-rate floor");
    c_curve->add_option("--v-min", curve.v_min, "curve start (default from rho)");
    c_curve->add_option("--v-max", curve.v_max, "curve end (default from rho)");
    c_curve->add_option("--points", curve.points, "grid size")->check(CLI::Range(2, 1000000));
    c_curve->add_option("--out", curve.out, "output CSV");

    ProfileArgs prof;
    auto* c_prof = app.add_subcommand("diffusion-profile", "export D(s)/D0 vs gap/R")->configurable();
    c_prof->add_option("--gap-min", prof.gap_min, "smallest gap/R");
    c_prof->add_option("--gap-max", prof.gap_max, "largest gap/R");
    c_prof->add_option("--points", prof.points, "grid size")->check(CLI::Range(2, 1000000));
    c_prof->add_option("--out", prof.out, "output CSV");

    BacktestArgs bt;
    auto* c_bt = app.add_subcommand("backtest", "threshold strategy with pip costs")->configurable();
    c_bt->add_option("--in", bt.in, "input series CSV (t,s)")->required();
    c_bt->add_option("--s-eq", bt.s_eq, "strategy threshold (log-rate)");
    c_bt->add_option("--cost-pips", bt.cost_pips, "cost per position change, pips");
    c_bt->add_option("--size", bt.size, "position size");
    c_bt->add_option("--out", bt.out, "output report JSON");
    c_bt->add_option("--trade-log", bt.trade_log, "optional per-step CSV log");

    IngestArgs ing;
    auto* c_ing = app.add_subcommand("ingest", "tick CSV to a 10-second median series")->configurable();
    c_ing->add_option("--in", ing.in, "tick CSV (timestamp,price or timestamp,bid,ask)")
        ->required();
    c_ing->add_option("--data-dir", ing.data_dir,
                      "directory searched for relative --in paths (or set TZONE_DATA_DIR)");
    c_ing->add_option("--window", ing.window, "slot width in seconds");
    c_ing->add_option("--max-gap-slots", ing.max_gap_slots,
                      "carried runs longer than this invalidate their increments");
    c_ing->add_option("--mask-out", ing.mask_out, "write the increment validity mask here");
    c_ing->add_option("--out", ing.out, "output series CSV");

    ReproduceArgs rep;
    auto* c_rep = app.add_subcommand("reproduce", "full fixture pipeline in one command")->configurable();
    c_rep->add_option("--out-dir", rep.out_dir, "output directory");
    c_rep->add_option("--seed", rep.seed, "fixture seed");
    c_rep->add_option("--steps", rep.steps, "fixture length")->check(CLI::PositiveNumber);
    c_rep->add_option("--threads", rep.threads, "worker threads");

    try {
        app.parse(argc, argv);
        if (c_sim->parsed()) return run_simulate(sim);
        if (c_est->parsed()) return run_estimate(est);
        if (c_fit->parsed()) return run_fit(fit);
        if (c_lr->parsed()) return run_lrtest(lr);
        if (c_curve->parsed()) return run_curve(curve);
        if (c_prof->parsed()) return run_profile(prof);
        if (c_bt->parsed()) return run_backtest(bt);
        if (c_ing->parsed()) return run_ingest(ing);
        if (c_rep->parsed()) return run_reproduce(rep);
        return 1;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
        app.exit(e);
        return 1;
    } catch (const tzone::DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    }
}
