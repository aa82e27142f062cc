#include "efftemp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "efftemp/errors.hpp"

namespace efftemp {

namespace {

constexpr double kMinTrialGap = 0.1;

std::vector<double> gibbs_weights(const std::vector<double>& energies, double beta) {
    return gibbs_populations(energies, Beta(beta));
}

void require_distribution(const std::vector<double>& p, const std::vector<double>& energies) {
    if (p.empty() || p.size() != energies.size()) {
        throw InputError("Gibbs-stochastic LP: populations and energies must be non-empty and of equal length");
    }
    double total = 0.0;
    for (double x : p) {
        if (!(x >= 0.0)) throw InputError("Gibbs-stochastic LP: negative population");
        total += x;
    }
    if (std::abs(total - 1.0) > kStateTolerance) {
        throw InputError("Gibbs-stochastic LP: populations sum to " + std::to_string(total));
    }
}

}  // namespace

double StochasticityResidual::max() const { return std::max({column_sum, gibbs_fixed, negativity}); }

StochasticityResidual gibbs_stochastic_residual(const HeatOptimum& opt, const std::vector<double>& energies,
                                                double beta_bath) {
    const std::size_t d = opt.dim;
    const std::vector<double> g = gibbs_weights(energies, beta_bath);
    StochasticityResidual res;
    for (std::size_t j = 0; j < d; ++j) {
        double col = 0.0;
        for (std::size_t i = 0; i < d; ++i) col += opt.at(i, j);
        res.column_sum = std::max(res.column_sum, std::abs(col - 1.0));
    }
    for (std::size_t i = 0; i < d; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            row += opt.at(i, j) * g[j];
            res.negativity = std::max(res.negativity, -opt.at(i, j));
        }
        res.gibbs_fixed = std::max(res.gibbs_fixed, std::abs(row - g[i]));
    }
    return res;
}

double energy_change(const HeatOptimum& opt, const std::vector<double>& energies,
                     const std::vector<double>& populations) {
    double change = 0.0;
    for (std::size_t i = 0; i < opt.dim; ++i) {
        double mapped = 0.0;
        for (std::size_t j = 0; j < opt.dim; ++j) mapped += opt.at(i, j) * populations[j];
        change += energies[i] * (mapped - populations[i]);
    }
    return change;
}

HeatOptimum max_energy_gain(const GibbsStochasticLP& request) {
    require_distribution(request.populations, request.energies);
    const std::size_t d = request.populations.size();
    const std::vector<double> g = gibbs_weights(request.energies, request.beta_bath);
    for (double w : g) {
        if (w < std::numeric_limits<double>::min()) {
            throw NumericalError("Gibbs-stochastic LP: bath Gibbs weights underflow at beta " +
                                 std::to_string(request.beta_bath));
        }
    }

    LinearProgram lp;
    lp.sense = request.sense;
    lp.objective.assign(d * d, 0.0);
    double mean = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        mean += request.energies[i] * request.populations[i];
        for (std::size_t j = 0; j < d; ++j) lp.objective[i * d + j] = request.energies[i] * request.populations[j];
    }
    for (std::size_t j = 0; j < d; ++j) {
        LinearConstraint column{std::vector<double>(d * d, 0.0), Relation::Equal, 1.0};
        for (std::size_t i = 0; i < d; ++i) column.coefficients[i * d + j] = 1.0;
        lp.constraints.push_back(std::move(column));
    }
    for (std::size_t i = 0; i < d; ++i) {
        LinearConstraint fixed{std::vector<double>(d * d, 0.0), Relation::Equal, g[i]};
        for (std::size_t j = 0; j < d; ++j) fixed.coefficients[i * d + j] = g[j];
        lp.constraints.push_back(std::move(fixed));
    }

    const LpSolution sol = solve_lp(lp);
    if (sol.status == LpStatus::Unbounded) {
        throw NumericalError("Gibbs-stochastic LP reported unbounded on a bounded polytope");
    }
    HeatOptimum opt;
    opt.dim = d;
    if (sol.status == LpStatus::Infeasible) return opt;
    opt.status = OptimumStatus::Optimal;
    opt.matrix = sol.x;
    opt.value = sol.value - mean;
    return opt;
}

HeatSign heat_sign_oracle(const QuantumSystem& system, double beta_bath, std::size_t max_dimension) {
    if (system.dim() > max_dimension) {
        throw InputError("heat_sign_oracle: dimension " + std::to_string(system.dim()) + " exceeds the LP cap of " +
                         std::to_string(max_dimension));
    }
    if (!std::isfinite(beta_bath)) throw InputError("heat_sign_oracle: bath beta must be finite");
    GibbsStochasticLP lp{system.populations(), system.energies(), beta_bath, Sense::Maximize};
    // Clean rounding so the populations form an exact distribution.
    double total = 0.0;
    for (double p : lp.populations) total += p;
    for (double& p : lp.populations) p /= total;

    const HeatOptimum up = max_energy_gain(lp);
    lp.sense = Sense::Minimize;
    const HeatOptimum down = max_energy_gain(lp);
    if (up.status != OptimumStatus::Optimal || down.status != OptimumStatus::Optimal) {
        throw NumericalError("heat_sign_oracle: Gibbs-stochastic polytope reported infeasible");
    }
    HeatSign sign;
    sign.max_gain = up.value;
    sign.max_loss = -down.value;
    sign.can_cool = sign.max_gain > kHeatMargin;
    sign.can_heat = sign.max_loss > kHeatMargin;
    return sign;
}

HeatSign predicted_heat_sign(const EffectiveTempPair& temps, double beta_bath) {
    HeatSign sign;
    sign.can_cool = hotter_than(Beta(beta_bath), temps.beta_c);
    sign.can_heat = hotter_than(temps.beta_h, Beta(beta_bath));
    return sign;
}

CoolingProtocol build_cooling_protocol(const QuantumSystem& system, double beta_bath) {
    if (!std::isfinite(beta_bath)) throw InputError("build_cooling_protocol: bath beta must be finite");
    const VirtualTempSpectrum spectrum = virtual_spectrum(system);
    if (spectrum.empty()) {
        throw NumericalError("build_cooling_protocol: no level pair with distinct energies and nonzero population");
    }
    const auto coldest = std::max_element(spectrum.entries.begin(), spectrum.entries.end(),
                                          [](const auto& a, const auto& b) { return a.beta < b.beta; });

    const auto& p = system.populations();
    CoolingProtocol proto;
    proto.i = coldest->i;
    proto.j = coldest->j;
    proto.gap = system.energies()[proto.j] - system.energies()[proto.i];
    proto.beta_max = coldest->beta;
    proto.beta_bath = beta_bath;
    const double x = beta_bath * proto.gap;
    proto.g0 = 1.0 / (1.0 + std::exp(-x));
    proto.g1 = 1.0 / (1.0 + std::exp(x));

    // delta = p_i g0 e^{-beta gap} (1 - e^{-(beta_max - beta) gap}), with g0 e^{-beta gap} = g1.
    const double p_i = p[proto.i];
    const double p_j = p[proto.j];
    if (proto.beta_max.is_plus_infinity()) {
        proto.delta_ij = p_i * proto.g1;
    } else if (proto.beta_max.is_minus_infinity()) {
        proto.delta_ij = -p_j * proto.g0;
    } else {
        const double exponent = -(proto.beta_max.value() - beta_bath) * proto.gap;
        proto.delta_ij = exponent < 50.0 ? p_i * proto.g1 * (1.0 - std::exp(exponent)) : p_i * proto.g1 - p_j * proto.g0;
    }
    proto.heat_to_thermometer = -proto.gap * proto.delta_ij;
    return proto;
}

double simulate_cooling_protocol(const QuantumSystem& system, const CoolingProtocol& protocol) {
    const std::size_t d = system.dim();
    const auto dd = static_cast<Eigen::Index>(2 * d);
    // Joint index 2a + b for |a>_A |b>_B. Interaction |j,0><i,1| + h.c.
    ComplexMatrix h_int = ComplexMatrix::Zero(dd, dd);
    const auto from = static_cast<Eigen::Index>(2 * protocol.i + 1);
    const auto to = static_cast<Eigen::Index>(2 * protocol.j);
    h_int(to, from) = 1.0;
    h_int(from, to) = 1.0;
    const ComplexMatrix u = unitary_evolution(HermitianOperator(h_int), std::numbers::pi / 2.0);

    const DensityMatrix thermometer = DensityMatrix::diagonal({protocol.g0, protocol.g1});
    const ComplexMatrix joint = kron(system.energy_basis_state().matrix(), thermometer.matrix());
    const ComplexMatrix after = u * joint * u.adjoint();
    const ComplexMatrix reduced = partial_trace(after, d, 2, Keep::Second);
    return protocol.gap * (reduced(1, 1).real() - protocol.g1);
}

OracleTrialSummary run_oracle_trials(std::size_t systems, std::size_t baths_per_system, std::uint64_t seed) {
    UniformSource rng(seed);
    OracleTrialSummary summary;
    for (std::size_t s = 0; s < systems; ++s) {
        const std::size_t d = 3 + rng.index(2);
        // Level spacings of at least kMinTrialGap keep beta_c and beta_h
        // bounded, so the heat available near either threshold stays well
        // above the decision margin.
        std::vector<double> energies(d);
        energies[0] = rng.uniform(0.0, 0.2);
        for (std::size_t k = 1; k < d; ++k) energies[k] = energies[k - 1] + rng.uniform(kMinTrialGap, 0.6);
        std::vector<double> p(d);
        double total = 0.0;
        for (double& x : p) {
            x = rng.uniform(0.02, 1.0);
            total += x;
        }
        for (double& x : p) x /= total;

        const QuantumSystem system = QuantumSystem::diagonal(energies, p);
        const EffectiveTempPair temps = single_copy_effective(system);
        for (std::size_t k = 0; k < baths_per_system; ++k) {
            // Probe both sides of both thresholds, then uniformly.
            const double offset = rng.uniform(0.01, 0.5);
            double beta_bath = 0.0;
            switch (k % 5) {
                case 0: beta_bath = temps.beta_c.value() - offset; break;
                case 1: beta_bath = temps.beta_c.value() + offset; break;
                case 2: beta_bath = temps.beta_h.value() - offset; break;
                case 3: beta_bath = temps.beta_h.value() + offset; break;
                default: beta_bath = rng.uniform(-3.0, 3.0); break;
            }
            const HeatSign lp_sign = heat_sign_oracle(system, beta_bath);
            const HeatSign predicted = predicted_heat_sign(temps, beta_bath);
            ++summary.cases;
            if (lp_sign.can_cool != predicted.can_cool || lp_sign.can_heat != predicted.can_heat) {
                ++summary.disagreements;
            }
            for (Sense sense : {Sense::Maximize, Sense::Minimize}) {
                const HeatOptimum opt = max_energy_gain({p, energies, beta_bath, sense});
                summary.worst_stochasticity_residual = std::max(
                    summary.worst_stochasticity_residual, gibbs_stochastic_residual(opt, energies, beta_bath).max());
            }
        }
        ++summary.systems;
    }
    return summary;
}

UniformSource::UniformSource(std::uint64_t seed) : engine_(seed) {}

double UniformSource::next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::size_t UniformSource::index(std::size_t n) { return static_cast<std::size_t>(next() * static_cast<double>(n)); }

}  // namespace efftemp
