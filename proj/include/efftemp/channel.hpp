#pragma once

#include <cstddef>

#include "efftemp/linalg.hpp"

namespace efftemp {

/// Linear map on d x d matrices stored as its d^2 x d^2 transfer matrix
/// acting on column-major vectorizations, vec(Phi(X)) = M vec(X).
class SuperOperator {
public:
    SuperOperator(std::size_t dim, ComplexMatrix transfer);

    /// X -> Tr_A[U (rho_A (x) X) U^dag] for a joint unitary on A (x) R.
    static SuperOperator reduced_dynamics(const ComplexMatrix& joint_unitary, const DensityMatrix& rho_a,
                                          std::size_t dim_r);

    std::size_t dim() const { return dim_; }
    const ComplexMatrix& transfer() const { return transfer_; }
    ComplexMatrix apply(const ComplexMatrix& x) const;

private:
    std::size_t dim_;
    ComplexMatrix transfer_;
};

enum class FixedPointMethod { Spectral, AveragedIteration };

struct FixedPoint {
    DensityMatrix state;
    double residual = 0.0;  // trace distance between Phi(X) and X
    FixedPointMethod method = FixedPointMethod::Spectral;
    std::size_t unit_eigenvalues = 0;  // eigenvalues within 1e-8 of 1
};

/// Fixed point of a trace-preserving channel. Uses the eigenvalue-1
/// eigenvector of the transfer matrix when it is unique; when the fixed
/// space is degenerate, iterates the averaged map (Phi + id)/2 from the
/// maximally mixed state, whose limit is the Cesaro mean of Phi's iterates.
/// Throws NumericalError when no eigenvalue is near 1 or the result is not
/// positive within 1e-9.
FixedPoint channel_fixed_point(const SuperOperator& channel);

/// Averaged-iteration fixed point from the maximally mixed state, exposed
/// as an independent check of the spectral route.
FixedPoint averaged_iteration_fixed_point(const SuperOperator& channel);

}  // namespace efftemp
