#include "tzone/hindered_diffusion.hpp"

#include <cmath>
#include <stdexcept>

#include "tzone/errors.hpp"

namespace tzone {

void ParticleEnv::validate() const {
    if (!(thermal_energy > 0.0)) throw std::invalid_argument("thermal energy must be > 0");
    if (!(viscosity > 0.0)) throw std::invalid_argument("viscosity must be > 0");
    if (!(radius > 0.0)) throw std::invalid_argument("radius must be > 0");
    if (!std::isfinite(wall)) throw std::invalid_argument("wall position must be finite");
}

double bulk_diffusion(const ParticleEnv& env) {
    env.validate();
    return env.thermal_energy / (6.0 * M_PI * env.viscosity * env.radius);
}

double lorentz_lambda(const ParticleEnv& env, double s) {
    env.validate();
    if (!(s > env.wall)) throw std::domain_error("lambda diverges at or below the wall");
    return 1.0 + 1.125 * env.radius / (s - env.wall);
}

double wall_diffusion(const ParticleEnv& env, double s) {
    return bulk_diffusion(env) / lorentz_lambda(env, s);
}

double volatility_from_diffusion(double diffusion) {
    if (diffusion < 0.0) throw std::domain_error("diffusion coefficient must be >= 0");
    return std::sqrt(2.0 * diffusion);
}

DriftClass classify_exponent(double gamma_exp) {
    if (!(gamma_exp > 0.0)) throw std::domain_error("exponent must be > 0");
    if (gamma_exp < 0.5) return DriftClass::DivergentDrift;
    if (gamma_exp == 0.5) return DriftClass::ConstantDrift;
    return DriftClass::VanishingDrift;
}

double noise_induced_drift(const std::function<double(double)>& g_profile, double s) {
    const double h = 1e-6 * std::max(std::abs(s), 1.0);
    const double g = g_profile(s);
    const double g_plus = g_profile(s + h);
    const double g_minus = g_profile(s - h);
    const double slope = (g_plus - g_minus) / (2.0 * h);
    const double value = g * slope;
    if (!std::isfinite(value))
        throw NumericalError("noise-induced drift is not finite at this point");
    return value;
}

double sqrt_profile_drift(double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("beta must be > 0");
    return 0.5 * beta * beta;
}

}  // namespace tzone
