#include "tzone/backtest.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <stdexcept>

#include "tzone/errors.hpp"

namespace tzone {

void StrategyConfig::validate() const {
    if (!std::isfinite(s_eq)) throw std::invalid_argument("s_eq must be finite");
    if (cost_pips < 0.0) throw std::invalid_argument("cost_pips must be >= 0");
    if (!(position_size > 0.0)) throw std::invalid_argument("position_size must be > 0");
}

BacktestReport run_strategy(const TimeSeries& series, const StrategyConfig& cfg) {
    cfg.validate();
    series.validate();
    const Eigen::Index n_steps = series.size() - 1;
    if (n_steps < 1) throw std::invalid_argument("backtest needs at least 2 samples");

    BacktestReport report;
    report.step_returns.resize(n_steps);
    report.positions.resize(n_steps);

    double position = 0.0;  // flat until the first off-threshold sample
    double gross = 0.0, costs = 0.0;
    for (Eigen::Index i = 0; i < n_steps; ++i) {
        const double s = series.values[i];
        double target = position;
        if (s > cfg.s_eq) target = -1.0;
        else if (s < cfg.s_eq) target = 1.0;

        double cost = 0.0;
        if (target != position) {
            // pip cost quoted on the level, converted to log-return at s
            cost = cfg.cost_pips * 1e-4 / std::exp(s) * cfg.position_size;
            report.n_trades += 1;
            position = target;
        }
        const double gross_step = position * (series.values[i + 1] - s) * cfg.position_size;
        gross += gross_step;
        costs += cost;
        report.positions[i] = position;
        report.step_returns[i] = gross_step - cost;
    }
    report.gross_pnl = gross;
    report.total_costs = costs;
    report.net_pnl = gross - costs;

    const double mean = report.step_returns.mean();
    const double var = (report.step_returns - mean).square().sum() /
                       std::max<double>(1.0, static_cast<double>(n_steps - 1));
    if (var > 0.0) {
        const double steps_per_year = 365.0 * 24.0 / series.tau_hours;
        report.sharpe_annualized = mean / std::sqrt(var) * std::sqrt(steps_per_year);
    }
    return report;
}

std::string BacktestReport::to_json() const {
    nlohmann::json j;
    j["n_trades"] = n_trades;
    j["gross_pnl"] = gross_pnl;
    j["net_pnl"] = net_pnl;
    j["total_costs"] = total_costs;
    if (sharpe_annualized)
        j["sharpe_annualized"] = *sharpe_annualized;
    else
        j["sharpe_annualized"] = nullptr;
    j["n_steps"] = step_returns.size();
    return j.dump(2);
}

void write_trade_log_csv(const TimeSeries& series, const BacktestReport& report,
                         const std::string& path) {
    if (report.step_returns.size() != series.size() - 1)
        throw std::invalid_argument("report does not match the series");
    std::ofstream out(path);
    if (!out) throw DataError("cannot open for writing: " + path);
    out << "t,s,position,step_return\n";
    char buf[160];
    for (Eigen::Index i = 0; i < report.step_returns.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%g,%.17g\n", series.time_at(i),
                      series.values[i], report.positions[i], report.step_returns[i]);
        out << buf;
    }
    if (!out) throw DataError("write failed: " + path);
}

}  // namespace tzone
