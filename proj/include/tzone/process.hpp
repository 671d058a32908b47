#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <variant>

namespace tzone {

/// Free float with constant drift (1/hour) and volatility (1/sqrt(hour)).
struct Gbm {
    double drift_f = 0.0;
    double vol_g = 0.0;
};

/// Particle in the combined entropic + pressure potential, drift expanded to
/// second order around the equilibrium point s_eq = barrier + sqrt(C/F).
struct PhysicalPotential {
    double c;      ///< repulsive potential constant, > 0
    double f;      ///< attractive force constant, > 0
    double vol_g;  ///< constant volatility, 1/sqrt(hour)
};

/// Local target-zone model: constant drift alpha, volatility beta*sqrt(s - barrier).
struct KrugmanLocal {
    double alpha;  ///< 1/hour
    double beta;   ///< 1/sqrt(hour)
};

/// Wall-hindered Brownian particle in Ito form: the square-root volatility
/// plus its noise-induced drift beta^2/2.
struct HinderedDiffusion {
    double beta;  ///< 1/sqrt(hour)
};

using ProcessModel = std::variant<Gbm, PhysicalPotential, KrugmanLocal, HinderedDiffusion>;

/// One SDE model plus the lower barrier it lives above. GBM is the only
/// barrier-free model; for the others `barrier` is the log-rate floor.
struct ProcessSpec {
    ProcessModel model;
    double barrier = std::numeric_limits<double>::quiet_NaN();

    static ProcessSpec gbm(double drift_f, double vol_g);
    static ProcessSpec physical(double c, double f, double vol_g, double barrier);
    static ProcessSpec krugman_local(double alpha, double beta, double barrier);
    static ProcessSpec hindered(double beta, double barrier);

    bool has_barrier() const { return !std::holds_alternative<Gbm>(model); }

    /// Equilibrium point barrier + sqrt(C/F); only for PhysicalPotential.
    double equilibrium() const;

    /// Throws std::invalid_argument when a parameter violates its sign or
    /// finiteness constraint (C, F, beta, vol_g > 0; finite barrier where required).
    void validate() const;

    std::string model_name() const;
};

/// Drift f(s) in 1/hour. Throws std::domain_error if s < barrier for a
/// barrier model.
double drift(const ProcessSpec& spec, double s);

/// Volatility g(s) in 1/sqrt(hour). Same domain rule as drift().
double volatility(const ProcessSpec& spec, double s);

}  // namespace tzone
