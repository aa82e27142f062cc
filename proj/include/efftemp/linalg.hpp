#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace efftemp {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Largest Hilbert-space dimension any dense kernel accepts.
inline constexpr std::size_t kMaxDimension = 4096;

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kStateTolerance = 1e-10;

/// Square complex matrix checked to be Hermitian (energy units, hbar = 1).
class HermitianOperator {
public:
    explicit HermitianOperator(ComplexMatrix entries, double tolerance = kHermitianTolerance);

    static HermitianOperator diagonal(const std::vector<double>& values);

    std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
    const ComplexMatrix& matrix() const { return entries_; }

private:
    ComplexMatrix entries_;
};

/// Hermitian, unit-trace, positive semidefinite matrix.
///
/// Validation tolerances are kStateTolerance for Hermiticity, trace and
/// smallest eigenvalue. The stored entries are Hermitized exactly.
class DensityMatrix {
public:
    explicit DensityMatrix(ComplexMatrix entries, double tolerance = kStateTolerance);

    static DensityMatrix diagonal(const std::vector<double>& populations);
    static DensityMatrix pure(const ComplexVector& psi);
    static DensityMatrix maximally_mixed(std::size_t dim);

    std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
    const ComplexMatrix& matrix() const { return entries_; }

    /// Real parts of the diagonal.
    std::vector<double> diagonal_entries() const;

private:
    ComplexMatrix entries_;
};

struct EigenDecomposition {
    RealVector eigenvalues;   // ascending
    ComplexMatrix eigenvectors;  // columns, unitary
};

EigenDecomposition hermitian_eig(const HermitianOperator& op);

/// exp(-i H t) via the eigendecomposition of H.
ComplexMatrix unitary_evolution(const HermitianOperator& op, double t);
ComplexMatrix unitary_evolution(const EigenDecomposition& eig, double t);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);
HermitianOperator tensor_product(const HermitianOperator& a, const HermitianOperator& b);

enum class Keep { First, Second };

/// Partial trace of an operator on C^{d_first} (x) C^{d_second}.
ComplexMatrix partial_trace(const ComplexMatrix& joint, std::size_t d_first, std::size_t d_second, Keep keep);
DensityMatrix partial_trace(const DensityMatrix& joint, std::size_t d_first, std::size_t d_second, Keep keep);

/// Zero all coherences between eigenspaces of distinct energy. The state is
/// assumed to be written in the energy eigenbasis.
DensityMatrix dephase(const DensityMatrix& rho, const std::vector<double>& energies);

/// Entropy -Tr rho log rho in nats.
double von_neumann_entropy(const DensityMatrix& rho);

/// Shannon entropy of a probability vector in nats; entries below 1e-14 count as zero.
double shannon_entropy(const std::vector<double>& probabilities);

double trace_norm(const ComplexMatrix& hermitian);
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

double max_abs(const ComplexMatrix& m);

/// Energies closer than 1e-12 (relative to their magnitude, floor 1) are
/// treated as one degenerate level.
bool same_energy(double a, double b);

/// Throws InputError when dim exceeds kMaxDimension.
void check_dimension(std::size_t dim, const char* where);

}  // namespace efftemp
