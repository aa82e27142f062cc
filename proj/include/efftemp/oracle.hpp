#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "efftemp/effective.hpp"
#include "efftemp/linalg.hpp"
#include "efftemp/simplex.hpp"
#include "efftemp/thermal.hpp"

namespace efftemp {

/// Verdicts below this energy change count as "no heat".
inline constexpr double kHeatMargin = 1e-9;
/// Default dimension cap for LP-based checks.
inline constexpr std::size_t kOracleMaxDimension = 6;

/// Optimize lambda(H)^T (G - 1) p over Gibbs-stochastic G: G >= 0, columns
/// summing to one, G g = g for the Gibbs weights g at beta_bath.
struct GibbsStochasticLP {
    std::vector<double> populations;
    std::vector<double> energies;
    double beta_bath = 0.0;
    Sense sense = Sense::Maximize;
};

enum class OptimumStatus { Optimal, Infeasible };

struct HeatOptimum {
    OptimumStatus status = OptimumStatus::Infeasible;
    /// Optimal energy change of the system, lambda^T (G - 1) p.
    double value = 0.0;
    /// Row-major d x d matrix G; (G p)_i = sum_j G_ij p_j.
    std::vector<double> matrix;
    std::size_t dim = 0;

    double at(std::size_t i, std::size_t j) const { return matrix[i * dim + j]; }
};

/// Residuals of a candidate G: max |column sum - 1|, max |G g - g|, and the
/// most negative entry (0 if none).
struct StochasticityResidual {
    double column_sum = 0.0;
    double gibbs_fixed = 0.0;
    double negativity = 0.0;

    double max() const;
};

StochasticityResidual gibbs_stochastic_residual(const HeatOptimum& opt, const std::vector<double>& energies,
                                                double beta_bath);
double energy_change(const HeatOptimum& opt, const std::vector<double>& energies,
                     const std::vector<double>& populations);

/// Optimal energy change over the Gibbs-stochastic polytope in the requested sense.
HeatOptimum max_energy_gain(const GibbsStochasticLP& lp);

struct HeatSign {
    bool can_cool = false;  // some thermometer at beta_bath can be cooled
    bool can_heat = false;  // some thermometer at beta_bath can be heated
    double max_gain = 0.0;  // largest achievable energy increase of the system
    double max_loss = 0.0;  // largest achievable energy decrease of the system
};

HeatSign heat_sign_oracle(const QuantumSystem& system, double beta_bath,
                          std::size_t max_dimension = kOracleMaxDimension);

/// Prediction from the virtual temperature spectrum: cooling possible iff the
/// bath is strictly hotter than beta_c, heating iff strictly colder than beta_h.
HeatSign predicted_heat_sign(const EffectiveTempPair& temps, double beta_bath);

/// Resonant-qubit swap that cools a thermometer using the coldest level pair.
struct CoolingProtocol {
    std::size_t i = 0;     // lower level of the pair
    std::size_t j = 0;     // upper level
    double gap = 0.0;      // e_j - e_i > 0
    double g0 = 0.0;       // thermometer ground population
    double g1 = 0.0;
    Beta beta_max;         // virtual inverse temperature of the pair (= beta_c)
    double beta_bath = 0.0;
    double delta_ij = 0.0; // population moved into the thermometer ground level
    double heat_to_thermometer = 0.0;  // -gap * delta_ij
};

CoolingProtocol build_cooling_protocol(const QuantumSystem& system, double beta_bath);

/// Heat absorbed by the thermometer when the protocol's swap is applied to
/// rho_A (x) gamma_B, simulated on the joint (d x 2)-dimensional space.
double simulate_cooling_protocol(const QuantumSystem& system, const CoolingProtocol& protocol);

/// Seeded batch comparison of LP verdicts against the spectrum prediction on
/// random diagonal systems of dimension 3-4.
struct OracleTrialSummary {
    std::size_t systems = 0;
    std::size_t cases = 0;
    std::size_t disagreements = 0;
    double worst_stochasticity_residual = 0.0;
};

OracleTrialSummary run_oracle_trials(std::size_t systems, std::size_t baths_per_system, std::uint64_t seed);

/// Uniform [0, 1) doubles from the top 53 bits of mt19937_64, so seeded
/// streams are identical across standard libraries.
class UniformSource {
public:
    explicit UniformSource(std::uint64_t seed);
    double next();
    double uniform(double lo, double hi) { return lo + (hi - lo) * next(); }
    std::size_t index(std::size_t n);

private:
    std::mt19937_64 engine_;
};

}  // namespace efftemp
