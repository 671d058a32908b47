#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <string>

#include "tzone/time_series.hpp"

namespace tzone {

/// Threshold mean-reversion strategy: short above s_eq, long below, hold at
/// the threshold. Costs are quoted in level pips (1 pip = 1e-4 of the level).
struct StrategyConfig {
    double s_eq;
    double cost_pips = 1.5;
    double position_size = 1.0;

    void validate() const;
};

struct BacktestReport {
    std::int64_t n_trades = 0;  ///< position changes, entry included
    double gross_pnl = 0.0;     ///< in log-return units times position size
    double net_pnl = 0.0;       ///< gross minus costs, exactly
    double total_costs = 0.0;
    /// empty when the step returns have zero variance
    std::optional<double> sharpe_annualized;
    Eigen::ArrayXd step_returns;  ///< net per-step returns
    Eigen::ArrayXd positions;     ///< position held over each step

    std::string to_json() const;
};

/// Run the strategy over one path. The position over step i is set by s_i
/// (previous position if s_i == s_eq, flat before the first signal); a pip
/// cost converts to log-return as cost_pips 1e-4 / exp(s_i) and is charged at
/// each change. Sharpe annualizes by sqrt(8760 / tau).
BacktestReport run_strategy(const TimeSeries& series, const StrategyConfig& cfg);

/// Optional per-step log `t,s,position,step_return`.
void write_trade_log_csv(const TimeSeries& series, const BacktestReport& report,
                         const std::string& path);

}  // namespace tzone
