#include "efftemp/effective.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "efftemp/errors.hpp"

namespace efftemp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double clean_log(double p) { return p < kPopulationFloor ? -kInf : std::log(p); }

// A level of a (possibly composite) system: total energy and the extreme
// log-populations found among the basis states sharing that energy.
struct EnergyGroup {
    double energy;
    double max_log;
    double min_log;
};

// Extremal betas over all pairs of basis states in distinct energy groups.
// Groups must be sorted by ascending energy.
EffectiveTempPair extremes_over_groups(const std::vector<EnergyGroup>& groups) {
    bool any = false;
    double beta_c = -kInf;
    double beta_h = kInf;
    for (std::size_t a = 0; a < groups.size(); ++a) {
        for (std::size_t b = a + 1; b < groups.size(); ++b) {
            const EnergyGroup& lower = groups[a];
            const EnergyGroup& upper = groups[b];
            const double gap = upper.energy - lower.energy;
            const bool lower_occupied = std::isfinite(lower.max_log);
            const bool upper_occupied = std::isfinite(upper.max_log);
            if (!lower_occupied && !upper_occupied) continue;
            any = true;

            // Coldest pair: most populated lower state against least populated upper state.
            double cold;
            if (!lower_occupied) {
                cold = -kInf;
            } else if (!std::isfinite(upper.min_log)) {
                cold = kInf;
            } else {
                cold = (lower.max_log - upper.min_log) / gap;
            }
            // Hottest pair: least populated lower state against most populated upper state.
            double hot;
            if (!upper_occupied) {
                hot = kInf;
            } else if (!std::isfinite(lower.min_log)) {
                hot = -kInf;
            } else {
                hot = (lower.min_log - upper.max_log) / gap;
            }
            beta_c = std::max(beta_c, cold);
            beta_h = std::min(beta_h, hot);
        }
    }
    if (!any) {
        throw NumericalError("effective temperatures undefined: no pair of occupied, non-degenerate levels");
    }
    return {Beta(beta_c), Beta(beta_h)};
}

void require_delta(double delta) {
    if (!(delta > 0.0) || !std::isfinite(delta)) {
        throw InputError("asymptotic temperatures need a finite delta > 0, got " + std::to_string(delta));
    }
}

}  // namespace

Beta pair_virtual_beta(double p_lower, double p_upper, double gap) {
    const bool lower_zero = p_lower < kPopulationFloor;
    const bool upper_zero = p_upper < kPopulationFloor;
    if (lower_zero && upper_zero) {
        throw InputError("pair_virtual_beta: both populations vanish");
    }
    if (upper_zero) return Beta::plus_infinity();
    if (lower_zero) return Beta::minus_infinity();
    return Beta(std::log(p_lower / p_upper) / gap);
}

VirtualTempSpectrum virtual_spectrum(const std::vector<double>& energies, const std::vector<double>& populations) {
    if (energies.size() != populations.size()) {
        throw InputError("virtual_spectrum: energies and populations differ in length");
    }
    VirtualTempSpectrum spectrum;
    for (std::size_t i = 0; i < energies.size(); ++i) {
        for (std::size_t j = i + 1; j < energies.size(); ++j) {
            if (same_energy(energies[i], energies[j])) continue;
            const bool i_lower = energies[i] < energies[j];
            const std::size_t lo = i_lower ? i : j;
            const std::size_t hi = i_lower ? j : i;
            if (populations[lo] < kPopulationFloor && populations[hi] < kPopulationFloor) continue;
            spectrum.entries.push_back(
                {lo, hi, pair_virtual_beta(populations[lo], populations[hi], energies[hi] - energies[lo])});
        }
    }
    return spectrum;
}

VirtualTempSpectrum virtual_spectrum(const QuantumSystem& system) {
    return virtual_spectrum(system.energies(), system.populations());
}

EffectiveTempPair extremal_temperatures(const VirtualTempSpectrum& spectrum) {
    if (spectrum.empty()) {
        throw NumericalError("effective temperatures undefined: empty virtual temperature spectrum");
    }
    Beta beta_c = Beta::minus_infinity();
    Beta beta_h = Beta::plus_infinity();
    for (const auto& entry : spectrum.entries) {
        beta_c = std::max(beta_c, entry.beta);
        beta_h = std::min(beta_h, entry.beta);
    }
    return {beta_c, beta_h};
}

EffectiveTempPair single_copy_effective(const QuantumSystem& system) {
    return extremal_temperatures(virtual_spectrum(system));
}

EffectiveTempPair tensor_power_effective(const QuantumSystem& system, std::size_t n) {
    if (n == 0) throw InputError("tensor_power_effective: n must be positive");
    const std::size_t d = system.dim();
    std::size_t full = 1;
    for (std::size_t k = 0; k < n; ++k) {
        if (full > kMaxTensorPowerDimension / d) {
            throw InputError("tensor_power_effective: " + std::to_string(d) + "^" + std::to_string(n) +
                             " exceeds the cap of " + std::to_string(kMaxTensorPowerDimension));
        }
        full *= d;
    }

    // Energy and population of a product basis state depend only on its
    // occupation type (how many copies sit on each level), so enumerate
    // compositions of n into d parts instead of d^n basis states.
    std::vector<double> logs(d);
    for (std::size_t i = 0; i < d; ++i) logs[i] = clean_log(system.populations()[i]);
    const auto& energies = system.energies();

    std::vector<std::pair<double, double>> types;  // (energy, log population)
    std::vector<std::size_t> counts(d, 0);
    auto emit = [&](auto&& self, std::size_t level, std::size_t remaining) -> void {
        if (level + 1 == d) {
            counts[level] = remaining;
            double e = 0.0, lp = 0.0;
            for (std::size_t i = 0; i < d; ++i) {
                if (counts[i] == 0) continue;
                e += static_cast<double>(counts[i]) * energies[i];
                lp += static_cast<double>(counts[i]) * logs[i];
            }
            types.emplace_back(e, lp);
            return;
        }
        for (std::size_t c = 0; c <= remaining; ++c) {
            counts[level] = c;
            self(self, level + 1, remaining - c);
        }
    };
    emit(emit, 0, n);

    std::sort(types.begin(), types.end());
    std::vector<EnergyGroup> groups;
    for (const auto& [e, lp] : types) {
        if (!groups.empty() && same_energy(groups.back().energy, e)) {
            groups.back().max_log = std::max(groups.back().max_log, lp);
            groups.back().min_log = std::min(groups.back().min_log, lp);
        } else {
            groups.push_back({e, lp, lp});
        }
    }
    return extremes_over_groups(groups);
}

Beta asymptotic_cold(const QuantumSystem& system, double delta) {
    require_delta(delta);
    const GibbsSolveResult target = gibbs_by_energy(system.energies(), system.mean_energy() + delta);
    return Beta((target.entropy - von_neumann_entropy(system.rho())) / delta);
}

Beta asymptotic_hot(const QuantumSystem& system, double delta) {
    require_delta(delta);
    const GibbsSolveResult target = gibbs_by_energy(system.energies(), system.mean_energy() - delta);
    return Beta((von_neumann_entropy(system.rho()) - target.entropy) / delta);
}

EffectiveTempPair asymptotic_effective(const AsymptoticRequest& req) {
    return {asymptotic_cold(req.system, req.delta), asymptotic_hot(req.system, req.delta)};
}

EffectiveTempPair expansion_effective(const AsymptoticRequest& req) {
    require_delta(req.delta);
    const QuantumSystem& system = req.system;
    const double e = system.mean_energy();
    // Same domain as the exact branches.
    gibbs_by_energy(system.energies(), e + req.delta);
    gibbs_by_energy(system.energies(), e - req.delta);

    const GibbsSolveResult reference = gibbs_by_energy(system.energies(), e);
    const double variance = energy_variance(reference);
    if (!(variance > 0.0)) {
        throw NumericalError("expansion_effective: Gibbs state at E has zero energy variance");
    }
    const double leading = (reference.entropy - von_neumann_entropy(system.rho())) / req.delta;
    const double curvature = req.delta / (2.0 * variance);
    // d^2S/dE^2 = -1/Var enters the two branches with opposite signs.
    return {Beta(leading + reference.beta.value() - curvature), Beta(-leading + reference.beta.value() + curvature)};
}

}  // namespace efftemp
