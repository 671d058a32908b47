#include <doctest.h>

#include <cmath>

#include "tzone/backtest.hpp"
#include "tzone/simulate.hpp"

using namespace tzone;

namespace {

TimeSeries series_of(std::initializer_list<double> values, double tau = 1.0) {
    TimeSeries s;
    s.tau_hours = tau;
    s.values.resize(static_cast<Eigen::Index>(values.size()));
    Eigen::Index i = 0;
    for (double v : values) s.values[i++] = v;
    return s;
}

}  // namespace

TEST_SUITE("backtest") {

TEST_CASE("flat series at the threshold trades nothing") {
    const auto series = series_of({0.2, 0.2, 0.2, 0.2});
    StrategyConfig cfg;
    cfg.s_eq = 0.2;
    const auto report = run_strategy(series, cfg);
    CHECK(report.n_trades == 0);
    CHECK(report.gross_pnl == 0.0);
    CHECK(report.net_pnl == 0.0);
    CHECK_FALSE(report.sharpe_annualized.has_value());  // zero variance
}

TEST_CASE("position logic: short above, long below, hold at the threshold") {
    // s_eq = 0: samples +, -, 0, + drive short, long, hold(long), short
    const auto series = series_of({0.01, -0.01, 0.0, 0.02, 0.01});
    StrategyConfig cfg;
    cfg.s_eq = 0.0;
    cfg.cost_pips = 0.0;
    const auto report = run_strategy(series, cfg);
    REQUIRE(report.positions.size() == 4);
    CHECK(report.positions[0] == -1.0);
    CHECK(report.positions[1] == 1.0);
    CHECK(report.positions[2] == 1.0);  // carried through the touch
    CHECK(report.positions[3] == -1.0);
    CHECK(report.n_trades == 3);
    // gross: -1*(-0.02) + 1*(0.01) + 1*(0.02) + -1*(-0.01) = 0.06
    CHECK(report.gross_pnl == doctest::Approx(0.06).epsilon(1e-12));
}

TEST_CASE("pip cost is charged at the level, once per change") {
    const auto series = series_of({0.1, -0.1, 0.1});
    StrategyConfig cfg;
    cfg.s_eq = 0.0;
    cfg.cost_pips = 1.5;
    const auto report = run_strategy(series, cfg);
    CHECK(report.n_trades == 2);
    const double expected = 1.5e-4 / std::exp(0.1) + 1.5e-4 / std::exp(-0.1);
    CHECK(report.total_costs == doctest::Approx(expected).epsilon(1e-12));
    CHECK(report.net_pnl == report.gross_pnl - report.total_costs);  // exact identity
}

TEST_CASE("net pnl never improves as costs rise") {
    const auto spec = ProcessSpec::gbm(0.0, 3e-3);
    SimConfig sim;
    sim.n_steps = 5000;
    sim.seed = 40;
    sim.initial_s = 0.0;
    const auto path = simulate_path(spec, sim);
    double prev_net = std::numeric_limits<double>::infinity();
    for (const double pips : {0.0, 0.5, 1.0, 2.0, 5.0}) {
        StrategyConfig cfg;
        cfg.s_eq = 0.0;
        cfg.cost_pips = pips;
        const auto report = run_strategy(path, cfg);
        CHECK(report.net_pnl <= prev_net);
        prev_net = report.net_pnl;
    }
}

TEST_CASE("position size scales both legs") {
    const auto series = series_of({0.01, -0.02, 0.015});
    StrategyConfig unit;
    unit.s_eq = 0.0;
    StrategyConfig doubled = unit;
    doubled.position_size = 2.0;
    const auto r1 = run_strategy(series, unit);
    const auto r2 = run_strategy(series, doubled);
    CHECK(r2.gross_pnl == doctest::Approx(2.0 * r1.gross_pnl).epsilon(1e-14));
    CHECK(r2.total_costs == doctest::Approx(2.0 * r1.total_costs).epsilon(1e-14));
}

TEST_CASE("driftless costless walk has no systematic sharpe") {
    // the annualized-sharpe sampling error is sqrt(steps per year / steps), so
    // each run covers about four years to put it near one half
    const auto spec = ProcessSpec::gbm(0.0, 2e-3);
    int inside = 0;
    for (int run = 0; run < 100; ++run) {
        SimConfig sim;
        sim.n_steps = 1500;
        sim.tau_hours = 24.0;
        sim.seed = 7000 + static_cast<std::uint64_t>(run);
        sim.initial_s = 0.0;
        const auto path = simulate_path(spec, sim);
        StrategyConfig cfg;
        cfg.s_eq = 0.0;
        cfg.cost_pips = 0.0;
        const auto report = run_strategy(path, cfg);
        REQUIRE(report.sharpe_annualized.has_value());
        if (std::abs(*report.sharpe_annualized) < 2.0) ++inside;
    }
    CHECK(inside >= 95);
}

TEST_CASE("annualization uses the series step") {
    // one deterministic design: returns identical up to the time unit
    const auto hourly = series_of({0.01, 0.02, 0.01, 0.02, 0.01}, 1.0);
    const auto daily = series_of({0.01, 0.02, 0.01, 0.02, 0.01}, 24.0);
    StrategyConfig cfg;
    cfg.s_eq = 0.0;
    cfg.cost_pips = 0.0;
    const auto rh = run_strategy(hourly, cfg);
    const auto rd = run_strategy(daily, cfg);
    REQUIRE(rh.sharpe_annualized.has_value());
    REQUIRE(rd.sharpe_annualized.has_value());
    CHECK(*rh.sharpe_annualized ==
          doctest::Approx(*rd.sharpe_annualized * std::sqrt(24.0)).epsilon(1e-12));
}

TEST_CASE("input validation") {
    StrategyConfig cfg;
    cfg.s_eq = 0.0;
    cfg.cost_pips = -1.0;
    CHECK_THROWS_AS(run_strategy(series_of({0.0, 0.1}), cfg), std::invalid_argument);
    StrategyConfig ok;
    ok.s_eq = 0.0;
    CHECK_THROWS_AS(run_strategy(series_of({0.1}), ok), std::invalid_argument);
}

}  // TEST_SUITE
