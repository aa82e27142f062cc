#include "efftemp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "efftemp/errors.hpp"

namespace efftemp {

namespace {

constexpr double kEntropyCutoff = 1e-14;

void require_square(const ComplexMatrix& m, const char* what) {
    if (m.rows() == 0 || m.rows() != m.cols()) {
        throw InputError(std::string(what) + ": matrix must be square and non-empty, got " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
    check_dimension(static_cast<std::size_t>(m.rows()), what);
}

RealVector hermitian_eigenvalues(const ComplexMatrix& m) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("hermitian eigensolver did not converge");
    }
    return solver.eigenvalues();
}

}  // namespace

void check_dimension(std::size_t dim, const char* where) {
    if (dim > kMaxDimension) {
        throw InputError(std::string(where) + ": dimension " + std::to_string(dim) +
                         " exceeds the dense cap of " + std::to_string(kMaxDimension));
    }
}

bool same_energy(double a, double b) {
    return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

double max_abs(const ComplexMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------

HermitianOperator::HermitianOperator(ComplexMatrix entries, double tolerance) : entries_(std::move(entries)) {
    require_square(entries_, "HermitianOperator");
    const double asym = max_abs(entries_ - entries_.adjoint());
    if (!(asym <= tolerance)) {
        throw InputError("HermitianOperator: matrix is not Hermitian (max |H - H^dag| = " + std::to_string(asym) + ")");
    }
    entries_ = (0.5 * (entries_ + entries_.adjoint())).eval();
}

HermitianOperator HermitianOperator::diagonal(const std::vector<double>& values) {
    ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(values.size()), static_cast<Eigen::Index>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) {
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = values[i];
    }
    return HermitianOperator(std::move(m));
}

DensityMatrix::DensityMatrix(ComplexMatrix entries, double tolerance) : entries_(std::move(entries)) {
    require_square(entries_, "DensityMatrix");
    const double asym = max_abs(entries_ - entries_.adjoint());
    if (!(asym <= tolerance)) {
        throw InputError("DensityMatrix: not Hermitian (max |rho - rho^dag| = " + std::to_string(asym) + ")");
    }
    entries_ = (0.5 * (entries_ + entries_.adjoint())).eval();
    const Complex tr = entries_.trace();
    if (!(std::abs(tr - Complex(1.0, 0.0)) <= tolerance)) {
        throw InputError("DensityMatrix: trace is " + std::to_string(tr.real()) + ", expected 1");
    }
    const double smallest = hermitian_eigenvalues(entries_)(0);
    if (!(smallest >= -tolerance)) {
        throw InputError("DensityMatrix: negative eigenvalue " + std::to_string(smallest));
    }
}

DensityMatrix DensityMatrix::diagonal(const std::vector<double>& populations) {
    ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(populations.size()),
                                          static_cast<Eigen::Index>(populations.size()));
    for (std::size_t i = 0; i < populations.size(); ++i) {
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = populations[i];
    }
    return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) {
    const double norm = psi.norm();
    if (!(norm > 0.0)) {
        throw InputError("DensityMatrix::pure: zero vector");
    }
    const ComplexVector unit = psi / norm;
    return DensityMatrix(unit * unit.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
    const auto d = static_cast<Eigen::Index>(dim);
    return DensityMatrix(ComplexMatrix::Identity(d, d) / static_cast<double>(dim));
}

std::vector<double> DensityMatrix::diagonal_entries() const {
    std::vector<double> out(dim());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = entries_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real();
    }
    return out;
}

// ---------------------------------------------------------------------------

EigenDecomposition hermitian_eig(const HermitianOperator& op) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(op.matrix());
    if (solver.info() != Eigen::Success) {
        throw NumericalError("hermitian eigensolver did not converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix unitary_evolution(const EigenDecomposition& eig, double t) {
    const Eigen::Index d = eig.eigenvalues.size();
    ComplexVector phases(d);
    for (Eigen::Index k = 0; k < d; ++k) {
        phases(k) = std::exp(Complex(0.0, -eig.eigenvalues(k) * t));
    }
    return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

ComplexMatrix unitary_evolution(const HermitianOperator& op, double t) {
    return unitary_evolution(hermitian_eig(op), t);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const Eigen::Index ar = a.rows(), ac = a.cols(), br = b.rows(), bc = b.cols();
    check_dimension(static_cast<std::size_t>(ar * br), "tensor_product");
    ComplexMatrix out(ar * br, ac * bc);
    for (Eigen::Index i = 0; i < ar; ++i) {
        for (Eigen::Index j = 0; j < ac; ++j) {
            out.block(i * br, j * bc, br, bc) = a(i, j) * b;
        }
    }
    return out;
}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
    return DensityMatrix(kron(a.matrix(), b.matrix()));
}

HermitianOperator tensor_product(const HermitianOperator& a, const HermitianOperator& b) {
    return HermitianOperator(kron(a.matrix(), b.matrix()));
}

ComplexMatrix partial_trace(const ComplexMatrix& joint, std::size_t d_first, std::size_t d_second, Keep keep) {
    const auto d1 = static_cast<Eigen::Index>(d_first);
    const auto d2 = static_cast<Eigen::Index>(d_second);
    if (d_first == 0 || d_second == 0 || joint.rows() != d1 * d2 || joint.cols() != d1 * d2) {
        throw InputError("partial_trace: joint dimension " + std::to_string(joint.rows()) + " does not factor as " +
                         std::to_string(d_first) + "x" + std::to_string(d_second));
    }
    if (keep == Keep::First) {
        ComplexMatrix out = ComplexMatrix::Zero(d1, d1);
        for (Eigen::Index i = 0; i < d1; ++i) {
            for (Eigen::Index j = 0; j < d1; ++j) {
                out(i, j) = joint.block(i * d2, j * d2, d2, d2).trace();
            }
        }
        return out;
    }
    ComplexMatrix out = ComplexMatrix::Zero(d2, d2);
    for (Eigen::Index i = 0; i < d1; ++i) {
        out += joint.block(i * d2, i * d2, d2, d2);
    }
    return out;
}

DensityMatrix partial_trace(const DensityMatrix& joint, std::size_t d_first, std::size_t d_second, Keep keep) {
    return DensityMatrix(partial_trace(joint.matrix(), d_first, d_second, keep));
}

DensityMatrix dephase(const DensityMatrix& rho, const std::vector<double>& energies) {
    if (energies.size() != rho.dim()) {
        throw InputError("dephase: " + std::to_string(energies.size()) + " energies for a state of dimension " +
                         std::to_string(rho.dim()));
    }
    ComplexMatrix out = rho.matrix();
    for (std::size_t i = 0; i < energies.size(); ++i) {
        for (std::size_t j = 0; j < energies.size(); ++j) {
            if (!same_energy(energies[i], energies[j])) {
                out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 0.0;
            }
        }
    }
    return DensityMatrix(std::move(out));
}

double shannon_entropy(const std::vector<double>& probabilities) {
    double s = 0.0;
    for (double p : probabilities) {
        if (p > kEntropyCutoff) {
            s -= p * std::log(p);
        }
    }
    return s;
}

double von_neumann_entropy(const DensityMatrix& rho) {
    const RealVector lambda = hermitian_eigenvalues(rho.matrix());
    return shannon_entropy(std::vector<double>(lambda.data(), lambda.data() + lambda.size()));
}

double trace_norm(const ComplexMatrix& hermitian) {
    return hermitian_eigenvalues(hermitian).cwiseAbs().sum();
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
    if (a.dim() != b.dim()) {
        throw InputError("trace_distance: dimensions " + std::to_string(a.dim()) + " and " + std::to_string(b.dim()) +
                         " differ");
    }
    return 0.5 * trace_norm(a.matrix() - b.matrix());
}

}  // namespace efftemp
