#pragma once

#include <optional>
#include <vector>

#include "efftemp/beta.hpp"
#include "efftemp/linalg.hpp"

namespace efftemp {

/// A system A = (H_A, rho_A): ascending energy levels, optionally the
/// energy eigenbasis (columns) in which rho is expressed, and the state.
/// Without an eigenbasis rho is taken to be written in the energy basis.
class QuantumSystem {
public:
    QuantumSystem(std::vector<double> energies, DensityMatrix rho, std::optional<ComplexMatrix> eigenbasis = std::nullopt);

    /// Diagonalizes H and stores its eigenbasis.
    static QuantumSystem from_hamiltonian(const HermitianOperator& hamiltonian, DensityMatrix rho);
    static QuantumSystem diagonal(std::vector<double> energies, const std::vector<double>& populations);

    std::size_t dim() const { return energies_.size(); }
    const std::vector<double>& energies() const { return energies_; }
    const DensityMatrix& rho() const { return rho_; }
    const std::optional<ComplexMatrix>& eigenbasis() const { return eigenbasis_; }

    /// rho expressed in the energy eigenbasis.
    DensityMatrix energy_basis_state() const;
    /// p_i = <e_i|rho|e_i>.
    const std::vector<double>& populations() const { return populations_; }
    double mean_energy() const;

private:
    std::vector<double> energies_;
    DensityMatrix rho_;
    std::optional<ComplexMatrix> eigenbasis_;
    std::vector<double> populations_;
};

struct GibbsSolveResult {
    std::vector<double> energies;
    Beta beta;
    DensityMatrix state;  // diagonal in the energy basis
    double mean_energy = 0.0;
    double entropy = 0.0;
    double energy_variance = 0.0;
    /// log Z for finite beta; energies enter unshifted.
    double log_partition = 0.0;
};

/// Populations proportional to exp(-beta e_i). beta = +inf gives the uniform
/// state on the ground level(s), beta = -inf the uniform state on the top level(s).
std::vector<double> gibbs_populations(const std::vector<double>& energies, Beta beta);

GibbsSolveResult gibbs_by_beta(const std::vector<double>& energies, Beta beta);

/// Gibbs state with the requested mean energy, found by bisection on beta.
/// Requires e_min < target < e_max unless the spectrum is a single level
/// equal to target. Throws NumericalError otherwise.
GibbsSolveResult gibbs_by_energy(const std::vector<double>& energies, double target_energy);

/// beta* of the Gibbs state with the same mean energy as the system;
/// +inf / -inf when the mean sits on the lower / upper spectral edge.
Beta t_star(const QuantumSystem& system);

/// beta * F = beta Tr[rho H] - S(rho); finite for every real beta.
double beta_free_energy(const QuantumSystem& system, double beta);
/// F = Tr[rho H] - S(rho) / beta. Throws InputError for beta = 0.
double free_energy(const QuantumSystem& system, double beta);

/// Tr[H^2 gamma] - Tr[H gamma]^2, recomputed from the result's populations.
double energy_variance(const GibbsSolveResult& result);

}  // namespace efftemp
