#pragma once

#include <cstddef>
#include <vector>

#include "efftemp/channel.hpp"
#include "efftemp/effective.hpp"
#include "efftemp/linalg.hpp"

namespace efftemp {

// ---------------------------------------------------------------------------
// Jaynes-Cummings cavity (A, truncated to N Fock levels) and two-level atom (R)
//
// Joint basis |n>_A (x) |s>_R with index 2n + s, s = 0 for |g> and 1 for |e>.
// H = w_A a^dag a + w_R |e><e| + g (sigma_+ a + sigma_- a^dag).

struct JCConfig {
    double omega_a = 1.0;
    double omega_r = 1.0;
    double g = 0.1;
    std::size_t fock_levels = 3;
    double tau = 28.5;
    std::vector<double> time_grid;

    /// steps + 1 uniform samples over [0, t_max].
    static std::vector<double> uniform_grid(double t_max, std::size_t steps);
};

/// Throws InputError unless omega_a == omega_r, N >= 2 and tau > 0.
void validate(const JCConfig& config);

HermitianOperator jc_hamiltonian(const JCConfig& config);
/// a^dag a + |e><e| on the joint space.
HermitianOperator excitation_number(std::size_t fock_levels);

std::vector<double> cavity_energies(const JCConfig& config);
std::vector<double> atom_energies(const JCConfig& config);

/// (|0> + |1> + ... + |N-1>) / sqrt(N).
DensityMatrix uniform_superposition(std::size_t dim);

/// Sum of |rho_ij| over i != j.
double offdiagonal_norm(const DensityMatrix& rho);

struct TimeSample {
    double t = 0.0;
    EffectiveTempPair cavity;
    EffectiveTempPair atom;
    double atom_distance = 0.0;     // D(rho_R(t), rho_R(0))
    double cavity_coherence = 0.0;  // off-diagonal 1-norm of rho_A(t)
    double top_level_population = 0.0;  // occupation of Fock level N-1
};

struct CatalysisResult {
    DensityMatrix catalyst_state;
    double fixed_point_residual = 0.0;
    FixedPointMethod method = FixedPointMethod::Spectral;
    std::vector<TimeSample> time_series;
    /// Atom distance to its initial state at t = tau.
    double atom_distance_at_tau = 0.0;
    /// Largest top-Fock-level occupation over the grid (truncation monitor).
    double max_top_level_population = 0.0;
};

/// Solves X = Tr_A[U(tau) (rho_A (x) X) U(tau)^dag] for the atom state X.
CatalysisResult solve_catalyst_fixed_point(const JCConfig& config, const DensityMatrix& cavity_state);

/// Effective temperatures and diagnostics of both subsystems over the grid.
CatalysisResult run_time_series(const JCConfig& config, const DensityMatrix& cavity_state,
                                const DensityMatrix& atom_state);

/// Fixed-point catalyst followed by the time series started from it.
CatalysisResult run_catalysis(const JCConfig& config, const DensityMatrix& cavity_state);

// ---------------------------------------------------------------------------
// Qutrit A (energies 0, 1, 2) with a qubit reference frame R (energies 0, 1).
// Joint basis index 2a + r.

struct QutritCatalystSetup {
    double lambda = 1.0;
    double beta = 0.0;
    DensityMatrix phi_r = reference_frame_state();

    /// (1/2)(1 - 1/sqrt2) I + (1/sqrt2)|+><+|.
    static DensityMatrix reference_frame_state();
};

/// (1 - lambda) gamma(beta) + lambda |psi><psi| with |psi> the uniform superposition.
DensityMatrix qutrit_state(double lambda, double beta);

/// Real pi/4 rotation inside the degenerate blocks {|01>, |10>} and
/// {|20>, |11>}, identity on |00> and |21>. The first vector of each block
/// gains population when the input has positive real block coherence.
ComplexMatrix qutrit_rotation();
HermitianOperator qutrit_joint_hamiltonian();

struct QutritCatalystOutcome {
    DensityMatrix sigma_a;
    DensityMatrix sigma_r;
    EffectiveTempPair temps;  // of sigma_a
    double correlation_norm = 0.0;  // trace norm of sigma_AR - sigma_A (x) sigma_R
    double catalyst_residual = 0.0;  // D(sigma_R, phi_R)
};

QutritCatalystOutcome qutrit_catalyst_protocol(const QutritCatalystSetup& setup);

/// Catalyst state phi_R solving phi_R = Tr_A[V (rho_A (x) phi_R) V^dag].
FixedPoint tune_catalyst(const QutritCatalystSetup& setup);

}  // namespace efftemp
