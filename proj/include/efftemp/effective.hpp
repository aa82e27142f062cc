#pragma once

#include <cstddef>
#include <vector>

#include "efftemp/beta.hpp"
#include "efftemp/thermal.hpp"

namespace efftemp {

/// Populations below this are treated as exact zeros.
inline constexpr double kPopulationFloor = 1e-15;

struct VirtualTemperature {
    std::size_t i = 0;  // lower level, e_i < e_j
    std::size_t j = 0;
    Beta beta;          // log(p_i / p_j) / (e_j - e_i)
};

/// Pairwise inverse virtual temperatures of a system's energy populations.
/// One entry per unordered pair of non-degenerate levels; pairs where both
/// populations vanish are omitted.
struct VirtualTempSpectrum {
    std::vector<VirtualTemperature> entries;

    bool empty() const { return entries.empty(); }
};

/// Cold and hot effective inverse temperatures.
///
/// For single-copy and tensor-power systems beta_h <= beta_c always holds
/// (smaller beta is hotter). The asymptotic branches need not be ordered.
struct EffectiveTempPair {
    Beta beta_c;
    Beta beta_h;

    bool ordered() const { return beta_h <= beta_c; }
};

struct AsymptoticRequest {
    QuantumSystem system;
    double delta = 0.0;  // heat per copy, energy units
};

/// Inverse virtual temperature of a level pair from its populations; the
/// zero-population limits give +-inf and the degenerate case is excluded.
Beta pair_virtual_beta(double p_lower, double p_upper, double gap);

VirtualTempSpectrum virtual_spectrum(const QuantumSystem& system);
VirtualTempSpectrum virtual_spectrum(const std::vector<double>& energies, const std::vector<double>& populations);

/// beta_c = max, beta_h = min over the virtual temperature spectrum.
/// Throws NumericalError when the spectrum is empty.
EffectiveTempPair single_copy_effective(const QuantumSystem& system);
EffectiveTempPair extremal_temperatures(const VirtualTempSpectrum& spectrum);

/// Cap on d^n for tensor powers.
inline constexpr std::size_t kMaxTensorPowerDimension = 1'000'000;

/// Effective temperatures of n independent copies (H^{(x)n}, rho^{(x)n}).
EffectiveTempPair tensor_power_effective(const QuantumSystem& system, std::size_t n);

/// Cold branch [S(gamma(E + delta)) - S(rho)] / delta.
Beta asymptotic_cold(const QuantumSystem& system, double delta);
/// Hot branch [S(rho) - S(gamma(E - delta))] / delta.
Beta asymptotic_hot(const QuantumSystem& system, double delta);
/// Both asymptotic branches; throws NumericalError if either bracket is invalid.
EffectiveTempPair asymptotic_effective(const AsymptoticRequest& req);

/// Second-order small-delta expansion of the asymptotic branches around
/// beta*(E), with leading term +-[S(gamma(E)) - S(rho)] / delta.
EffectiveTempPair expansion_effective(const AsymptoticRequest& req);

}  // namespace efftemp
