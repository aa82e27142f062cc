#include "efftemp/channel.hpp"

#include <string>

#include "efftemp/errors.hpp"

namespace efftemp {

namespace {

constexpr double kUnitEigenvalueTolerance = 1e-8;
constexpr double kPositivityTolerance = 1e-9;
constexpr double kIterationTolerance = 1e-15;
constexpr std::size_t kMaxIterations = 1'000'000;

ComplexVector vectorize(const ComplexMatrix& x) { return Eigen::Map<const ComplexVector>(x.data(), x.size()); }

ComplexMatrix unvectorize(const ComplexVector& v, std::size_t dim) {
    const auto d = static_cast<Eigen::Index>(dim);
    return Eigen::Map<const ComplexMatrix>(v.data(), d, d);
}

// Hermitize, normalize the trace and clip round-off negativity.
DensityMatrix to_state(ComplexMatrix x) {
    x = (0.5 * (x + x.adjoint())).eval();
    const Complex tr = x.trace();
    if (std::abs(tr) < 1e-14) throw NumericalError("channel fixed point: eigenvector has zero trace");
    x /= tr;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(x);
    const double smallest = eig.eigenvalues()(0);
    if (smallest < -kPositivityTolerance) {
        throw NumericalError("channel fixed point is not positive: eigenvalue " + std::to_string(smallest));
    }
    if (smallest < 0.0) {
        const RealVector clipped = eig.eigenvalues().cwiseMax(0.0);
        x = eig.eigenvectors() * clipped.asDiagonal() * eig.eigenvectors().adjoint();
        x /= x.trace();
    }
    return DensityMatrix(std::move(x));
}

FixedPoint finish(const SuperOperator& channel, DensityMatrix state, FixedPointMethod method, std::size_t unit) {
    const DensityMatrix image(channel.apply(state.matrix()), 1e-8);
    const double residual = trace_distance(image, state);
    return FixedPoint{std::move(state), residual, method, unit};
}

}  // namespace

SuperOperator::SuperOperator(std::size_t dim, ComplexMatrix transfer) : dim_(dim), transfer_(std::move(transfer)) {
    const auto n = static_cast<Eigen::Index>(dim * dim);
    if (dim == 0 || transfer_.rows() != n || transfer_.cols() != n) {
        throw InputError("SuperOperator: transfer matrix must be d^2 x d^2");
    }
}

SuperOperator SuperOperator::reduced_dynamics(const ComplexMatrix& joint_unitary, const DensityMatrix& rho_a,
                                              std::size_t dim_r) {
    const std::size_t dim_a = rho_a.dim();
    const auto n = static_cast<Eigen::Index>(dim_r * dim_r);
    if (joint_unitary.rows() != static_cast<Eigen::Index>(dim_a * dim_r) || joint_unitary.cols() != joint_unitary.rows()) {
        throw InputError("SuperOperator::reduced_dynamics: unitary does not act on A (x) R");
    }
    ComplexMatrix transfer(n, n);
    const auto dr = static_cast<Eigen::Index>(dim_r);
    for (Eigen::Index k = 0; k < n; ++k) {
        ComplexMatrix unit = ComplexMatrix::Zero(dr, dr);
        unit(k % dr, k / dr) = 1.0;
        const ComplexMatrix image =
            partial_trace(joint_unitary * kron(rho_a.matrix(), unit) * joint_unitary.adjoint(), dim_a, dim_r, Keep::Second);
        transfer.col(k) = vectorize(image);
    }
    return SuperOperator(dim_r, std::move(transfer));
}

ComplexMatrix SuperOperator::apply(const ComplexMatrix& x) const {
    return unvectorize(transfer_ * vectorize(x), dim_);
}

FixedPoint averaged_iteration_fixed_point(const SuperOperator& channel) {
    ComplexMatrix x = DensityMatrix::maximally_mixed(channel.dim()).matrix();
    for (std::size_t k = 0; k < kMaxIterations; ++k) {
        const ComplexMatrix next = 0.5 * (x + channel.apply(x));
        const double step = max_abs(next - x);
        x = next;
        if (step < kIterationTolerance) break;
    }
    return finish(channel, to_state(x), FixedPointMethod::AveragedIteration, 0);
}

FixedPoint channel_fixed_point(const SuperOperator& channel) {
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(channel.transfer());
    if (solver.info() != Eigen::Success) throw NumericalError("channel fixed point: eigensolver failed");

    std::size_t unit = 0;
    Eigen::Index best = -1;
    double best_gap = kUnitEigenvalueTolerance;
    for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
        const double gap = std::abs(solver.eigenvalues()(k) - Complex(1.0, 0.0));
        if (gap <= kUnitEigenvalueTolerance) {
            ++unit;
            if (best < 0 || gap < best_gap) {
                best = k;
                best_gap = gap;
            }
        }
    }
    if (unit == 0) {
        throw NumericalError("channel fixed point: no eigenvalue within 1e-8 of 1 (not a trace-preserving channel?)");
    }
    if (unit > 1) {
        FixedPoint fp = averaged_iteration_fixed_point(channel);
        fp.unit_eigenvalues = unit;
        return fp;
    }
    return finish(channel, to_state(unvectorize(solver.eigenvectors().col(best), channel.dim())),
                  FixedPointMethod::Spectral, unit);
}

}  // namespace efftemp
