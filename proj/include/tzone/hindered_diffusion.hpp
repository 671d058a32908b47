#pragma once

#include <functional>

namespace tzone {

/// Physical environment of a spherical colloid near a flat wall. SI units
/// live only here; the bridge back to finance (g = sqrt(2D)) is exercised in
/// nondimensional form.
struct ParticleEnv {
    double thermal_energy;  ///< k_B T, joules
    double viscosity;       ///< Pa s
    double radius;          ///< m
    double wall = 0.0;      ///< wall position, m

    void validate() const;
};

/// Einstein-Stokes bulk diffusion D0 = k_B T / (6 pi nu R).
double bulk_diffusion(const ParticleEnv& env);

/// Lorentz correction lambda = 1 + (9/8) R / (s - wall); diverges at contact,
/// so s <= wall throws std::domain_error.
double lorentz_lambda(const ParticleEnv& env, double s);

/// Hindered coefficient D(s) = D0 / lambda(s); to first order in the gap,
/// D(s) = (8 D0 / 9R) (s - wall).
double wall_diffusion(const ParticleEnv& env, double s);

/// g = sqrt(2 D). Throws std::domain_error for D < 0.
double volatility_from_diffusion(double diffusion);

enum class DriftClass {
    DivergentDrift,  ///< exponent < 1/2: infinite repulsion at the wall
    ConstantDrift,   ///< exponent = 1/2: drift beta^2/2 independent of s
    VanishingDrift,  ///< exponent > 1/2: wall is absorbing
};

/// Classification of g(s) = beta s^gamma by the behaviour of the induced
/// drift beta^2 gamma s^{2 gamma - 1} at the wall. gamma <= 0 throws
/// std::domain_error.
DriftClass classify_exponent(double gamma_exp);

/// Noise-induced drift g(s) g'(s) of an Ito diffusion with volatility profile
/// g, by central difference with relative step 1e-6. Throws NumericalError if
/// the profile or the derivative is not finite at s.
double noise_induced_drift(const std::function<double(double)>& g_profile, double s);

/// Analytic branch for the square-root profile beta sqrt(s - wall): the drift
/// is beta^2/2 at every s above the wall.
double sqrt_profile_drift(double beta);

}  // namespace tzone
