#include "tzone/process.hpp"

#include <limits>
#include <stdexcept>

namespace tzone {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

ProcessSpec ProcessSpec::gbm(double drift_f, double vol_g) {
    ProcessSpec spec{Gbm{drift_f, vol_g}, std::numeric_limits<double>::quiet_NaN()};
    spec.validate();
    return spec;
}

ProcessSpec ProcessSpec::physical(double c, double f, double vol_g, double barrier) {
    ProcessSpec spec{PhysicalPotential{c, f, vol_g}, barrier};
    spec.validate();
    return spec;
}

ProcessSpec ProcessSpec::krugman_local(double alpha, double beta, double barrier) {
    ProcessSpec spec{KrugmanLocal{alpha, beta}, barrier};
    spec.validate();
    return spec;
}

ProcessSpec ProcessSpec::hindered(double beta, double barrier) {
    ProcessSpec spec{HinderedDiffusion{beta}, barrier};
    spec.validate();
    return spec;
}

double ProcessSpec::equilibrium() const {
    const auto* pp = std::get_if<PhysicalPotential>(&model);
    if (!pp) throw std::logic_error("equilibrium() is defined only for PhysicalPotential");
    return barrier + std::sqrt(pp->c / pp->f);
}

void ProcessSpec::validate() const {
    if (has_barrier()) {
        require(std::isfinite(barrier), "barrier must be finite for barrier models");
    }
    std::visit(
        [&](const auto& m) {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, Gbm>) {
                require(std::isfinite(m.drift_f) && std::isfinite(m.vol_g), "GBM parameters must be finite");
                require(m.vol_g >= 0.0, "GBM volatility must be >= 0");
            } else if constexpr (std::is_same_v<M, PhysicalPotential>) {
                require(m.c > 0.0, "potential constant C must be > 0");
                require(m.f > 0.0, "force constant F must be > 0");
                require(m.vol_g >= 0.0, "volatility must be >= 0");
                require(std::isfinite(equilibrium()) && equilibrium() > barrier,
                        "equilibrium must be finite and above the barrier");
            } else if constexpr (std::is_same_v<M, KrugmanLocal>) {
                require(std::isfinite(m.alpha), "alpha must be finite");
                require(m.beta > 0.0, "beta must be > 0");
            } else {
                require(m.beta > 0.0, "beta must be > 0");
            }
        },
        model);
}

std::string ProcessSpec::model_name() const {
    return std::visit(
        [](const auto& m) -> std::string {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, Gbm>) return "gbm";
            else if constexpr (std::is_same_v<M, PhysicalPotential>) return "physical";
            else if constexpr (std::is_same_v<M, KrugmanLocal>) return "krugman";
            else return "hindered";
        },
        model);
}

namespace {

void check_domain(const ProcessSpec& spec, double s) {
    if (spec.has_barrier() && s < spec.barrier)
        throw std::domain_error("log-rate below the barrier for a barrier model");
}

}  // namespace

double drift(const ProcessSpec& spec, double s) {
    check_domain(spec, s);
    return std::visit(
        [&](const auto& m) -> double {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, Gbm>) {
                return m.drift_f;
            } else if constexpr (std::is_same_v<M, PhysicalPotential>) {
                const double x = s - spec.equilibrium();
                return 3.0 * (m.f * m.f / m.c) * x * x - 2.0 * std::sqrt(m.f * m.f * m.f / m.c) * x;
            } else if constexpr (std::is_same_v<M, KrugmanLocal>) {
                return m.alpha;
            } else {
                return 0.5 * m.beta * m.beta;
            }
        },
        spec.model);
}

double volatility(const ProcessSpec& spec, double s) {
    check_domain(spec, s);
    return std::visit(
        [&](const auto& m) -> double {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, Gbm>) {
                return m.vol_g;
            } else if constexpr (std::is_same_v<M, PhysicalPotential>) {
                return m.vol_g;
            } else {
                return m.beta * std::sqrt(s - spec.barrier);
            }
        },
        spec.model);
}

}  // namespace tzone
