#include "efftemp/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <string>

#include "efftemp/errors.hpp"

namespace efftemp {

std::string format_beta(Beta beta) {
    if (beta.is_plus_infinity()) return "inf";
    if (beta.is_minus_infinity()) return "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", beta.value());
    return buf;
}

namespace {

constexpr int kMaxBisectionSteps = 200;
constexpr int kMaxBracketDoublings = 2000;
constexpr double kBetaWidthTolerance = 1e-13;

double energy_scale(const std::vector<double>& energies) {
    double scale = 1.0;
    for (double e : energies) scale = std::max(scale, std::abs(e));
    return scale;
}

void require_levels(const std::vector<double>& energies, const char* where) {
    if (energies.empty()) {
        throw InputError(std::string(where) + ": at least one energy level is required");
    }
    for (double e : energies) {
        if (!std::isfinite(e)) throw InputError(std::string(where) + ": energies must be finite");
    }
}

double mean_of(const std::vector<double>& p, const std::vector<double>& energies) {
    double e = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) e += p[i] * energies[i];
    return e;
}

double centered_variance(const std::vector<double>& p, const std::vector<double>& energies) {
    const double mean = mean_of(p, energies);
    double v = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) v += p[i] * (energies[i] - mean) * (energies[i] - mean);
    return v;
}

double mean_energy_at(const std::vector<double>& energies, double beta) {
    return mean_of(gibbs_populations(energies, Beta(beta)), energies);
}

}  // namespace

// ---------------------------------------------------------------------------

QuantumSystem::QuantumSystem(std::vector<double> energies, DensityMatrix rho, std::optional<ComplexMatrix> eigenbasis)
    : energies_(std::move(energies)), rho_(std::move(rho)), eigenbasis_(std::move(eigenbasis)) {
    require_levels(energies_, "QuantumSystem");
    if (energies_.size() != rho_.dim()) {
        throw InputError("QuantumSystem: " + std::to_string(energies_.size()) + " energies for a state of dimension " +
                         std::to_string(rho_.dim()));
    }
    if (!std::is_sorted(energies_.begin(), energies_.end())) {
        throw InputError("QuantumSystem: energies must be ascending");
    }
    if (eigenbasis_) {
        const auto d = static_cast<Eigen::Index>(energies_.size());
        if (eigenbasis_->rows() != d || eigenbasis_->cols() != d) {
            throw InputError("QuantumSystem: eigenbasis has the wrong shape");
        }
        if (max_abs(eigenbasis_->adjoint() * *eigenbasis_ - ComplexMatrix::Identity(d, d)) > kStateTolerance) {
            throw InputError("QuantumSystem: eigenbasis is not unitary");
        }
    }
    populations_ = energy_basis_state().diagonal_entries();
    const double total = std::accumulate(populations_.begin(), populations_.end(), 0.0);
    if (std::abs(total - 1.0) > kStateTolerance) {
        throw InputError("QuantumSystem: populations sum to " + std::to_string(total));
    }
    for (double& p : populations_) p = std::max(p, 0.0);
}

QuantumSystem QuantumSystem::from_hamiltonian(const HermitianOperator& hamiltonian, DensityMatrix rho) {
    EigenDecomposition eig = hermitian_eig(hamiltonian);
    std::vector<double> energies(eig.eigenvalues.data(), eig.eigenvalues.data() + eig.eigenvalues.size());
    return QuantumSystem(std::move(energies), std::move(rho), std::move(eig.eigenvectors));
}

QuantumSystem QuantumSystem::diagonal(std::vector<double> energies, const std::vector<double>& populations) {
    return QuantumSystem(std::move(energies), DensityMatrix::diagonal(populations));
}

DensityMatrix QuantumSystem::energy_basis_state() const {
    if (!eigenbasis_) return rho_;
    return DensityMatrix(eigenbasis_->adjoint() * rho_.matrix() * *eigenbasis_);
}

double QuantumSystem::mean_energy() const { return mean_of(populations_, energies_); }

// ---------------------------------------------------------------------------

std::vector<double> gibbs_populations(const std::vector<double>& energies, Beta beta) {
    require_levels(energies, "gibbs_populations");
    std::vector<double> p(energies.size(), 0.0);
    if (!beta.is_finite()) {
        const double edge = beta.is_plus_infinity() ? *std::min_element(energies.begin(), energies.end())
                                                    : *std::max_element(energies.begin(), energies.end());
        std::size_t count = 0;
        for (std::size_t i = 0; i < energies.size(); ++i) {
            if (same_energy(energies[i], edge)) {
                p[i] = 1.0;
                ++count;
            }
        }
        for (double& x : p) x /= static_cast<double>(count);
        return p;
    }
    // Shift by min(beta e_i) so the largest weight is exactly 1.
    double shift = beta.value() * energies[0];
    for (double e : energies) shift = std::min(shift, beta.value() * e);
    double z = 0.0;
    for (std::size_t i = 0; i < energies.size(); ++i) {
        p[i] = std::exp(-(beta.value() * energies[i] - shift));
        z += p[i];
    }
    for (double& x : p) x /= z;
    return p;
}

GibbsSolveResult gibbs_by_beta(const std::vector<double>& energies, Beta beta) {
    std::vector<double> p = gibbs_populations(energies, beta);
    double log_z = 0.0;
    if (beta.is_finite()) {
        double shift = beta.value() * energies[0];
        for (double e : energies) shift = std::min(shift, beta.value() * e);
        double z = 0.0;
        for (double e : energies) z += std::exp(-(beta.value() * e - shift));
        log_z = std::log(z) - shift;
    } else {
        log_z = beta.is_plus_infinity() ? std::numeric_limits<double>::infinity()
                                        : -std::numeric_limits<double>::infinity();
    }
    const double mean = mean_of(p, energies);
    const double entropy = shannon_entropy(p);
    const double variance = centered_variance(p, energies);
    return GibbsSolveResult{energies, beta, DensityMatrix::diagonal(p), mean, entropy, variance, log_z};
}

GibbsSolveResult gibbs_by_energy(const std::vector<double>& energies, double target_energy) {
    require_levels(energies, "gibbs_by_energy");
    const double lo_e = *std::min_element(energies.begin(), energies.end());
    const double hi_e = *std::max_element(energies.begin(), energies.end());
    const double scale = energy_scale(energies);
    const double residual_tol = 1e-12 * std::max(1.0, std::abs(target_energy));

    if (same_energy(lo_e, hi_e)) {
        if (std::abs(target_energy - lo_e) <= residual_tol) return gibbs_by_beta(energies, Beta(0.0));
        throw NumericalError("gibbs_by_energy: fully degenerate spectrum at " + std::to_string(lo_e) +
                             " cannot reach mean energy " + std::to_string(target_energy));
    }
    if (!(target_energy > lo_e && target_energy < hi_e)) {
        throw NumericalError("gibbs_by_energy: target energy " + std::to_string(target_energy) +
                             " outside the open interval (" + std::to_string(lo_e) + ", " + std::to_string(hi_e) + ")");
    }

    const double mean_at_zero = mean_energy_at(energies, 0.0);
    if (std::abs(mean_at_zero - target_energy) <= 1e-15 * scale) return gibbs_by_beta(energies, Beta(0.0));

    // mean(beta) is strictly decreasing: bracket [lo, hi] with mean(lo) >= target >= mean(hi).
    double lo = 0.0, hi = 0.0;
    if (target_energy < mean_at_zero) {
        hi = 1.0 / (hi_e - lo_e);
        int k = 0;
        while (mean_energy_at(energies, hi) > target_energy) {
            lo = hi;
            hi *= 2.0;
            if (++k > kMaxBracketDoublings) throw NumericalError("gibbs_by_energy: bracket expansion failed");
        }
    } else {
        lo = -1.0 / (hi_e - lo_e);
        int k = 0;
        while (mean_energy_at(energies, lo) < target_energy) {
            hi = lo;
            lo *= 2.0;
            if (++k > kMaxBracketDoublings) throw NumericalError("gibbs_by_energy: bracket expansion failed");
        }
    }

    for (int step = 0; step < kMaxBisectionSteps; ++step) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo <= kBetaWidthTolerance * std::max(1.0, std::abs(mid))) break;
        if (mean_energy_at(energies, mid) > target_energy) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (step + 1 == kMaxBisectionSteps) throw NumericalError("gibbs_by_energy: bisection did not converge");
    }

    GibbsSolveResult result = gibbs_by_beta(energies, Beta(0.5 * (lo + hi)));
    if (std::abs(result.mean_energy - target_energy) > residual_tol) {
        throw NumericalError("gibbs_by_energy: energy residual " +
                             std::to_string(std::abs(result.mean_energy - target_energy)) + " above tolerance");
    }
    return result;
}

Beta t_star(const QuantumSystem& system) {
    const auto& energies = system.energies();
    const double e = system.mean_energy();
    const double lo_e = energies.front();
    const double hi_e = energies.back();
    const double edge_tol = 1e-14 * energy_scale(energies);
    if (same_energy(lo_e, hi_e)) return gibbs_by_energy(energies, e).beta;
    if (e <= lo_e + edge_tol) return Beta::plus_infinity();
    if (e >= hi_e - edge_tol) return Beta::minus_infinity();
    return gibbs_by_energy(energies, e).beta;
}

double beta_free_energy(const QuantumSystem& system, double beta) {
    return beta * system.mean_energy() - von_neumann_entropy(system.rho());
}

double free_energy(const QuantumSystem& system, double beta) {
    if (beta == 0.0 || !std::isfinite(beta)) {
        throw InputError("free_energy: the temperature form needs a finite, non-zero beta");
    }
    return system.mean_energy() - von_neumann_entropy(system.rho()) / beta;
}

double energy_variance(const GibbsSolveResult& result) {
    return centered_variance(result.state.diagonal_entries(), result.energies);
}

}  // namespace efftemp
