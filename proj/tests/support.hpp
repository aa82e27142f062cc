#pragma once

// Hand-rolled random generators shared by the unit and acceptance tests.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "efftemp/linalg.hpp"
#include "efftemp/oracle.hpp"
#include "efftemp/thermal.hpp"

namespace efftemp::testing {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : src_(seed) {}

    double uniform(double lo = 0.0, double hi = 1.0) { return src_.uniform(lo, hi); }
    std::size_t index(std::size_t n) { return src_.index(n); }

    // Approximately normal (Irwin-Hall with 12 terms); plenty for test data.
    double normal() {
        double s = -6.0;
        for (int k = 0; k < 12; ++k) s += src_.next();
        return s;
    }

    ComplexMatrix complex_matrix(std::size_t rows, std::size_t cols) {
        ComplexMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = Complex(normal(), normal());
        }
        return m;
    }

    HermitianOperator hermitian(std::size_t dim) {
        const ComplexMatrix a = complex_matrix(dim, dim);
        return HermitianOperator(ComplexMatrix((a + a.adjoint()) / 2.0));
    }

    // Full-rank mixed state from a Ginibre matrix.
    DensityMatrix density(std::size_t dim) {
        const ComplexMatrix a = complex_matrix(dim, dim);
        ComplexMatrix rho = a * a.adjoint();
        rho /= rho.trace().real();
        return DensityMatrix(rho);
    }

    ComplexMatrix unitary(std::size_t dim) { return unitary_evolution(hermitian(dim), 1.0); }

    std::vector<double> probabilities(std::size_t dim, double floor = 0.0) {
        std::vector<double> p(dim);
        double total = 0.0;
        for (double& x : p) {
            x = uniform(floor, 1.0);
            total += x;
        }
        for (double& x : p) x /= total;
        return p;
    }

    // Ascending energies with gaps in [min_gap, max_gap].
    std::vector<double> spectrum(std::size_t dim, double min_gap = 0.1, double max_gap = 1.0) {
        std::vector<double> e(dim);
        e[0] = uniform(-0.5, 0.5);
        for (std::size_t k = 1; k < dim; ++k) e[k] = e[k - 1] + uniform(min_gap, max_gap);
        return e;
    }

private:
    UniformSource src_;
};

inline double max_diff(const ComplexMatrix& a, const ComplexMatrix& b) { return max_abs(a - b); }

inline ComplexMatrix identity(std::size_t dim) {
    return ComplexMatrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
}

// exp(A) by scaling and squaring of a truncated Taylor series; independent of
// the eigendecomposition route used by the library.
inline ComplexMatrix taylor_expm(const ComplexMatrix& a) {
    const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
    int squarings = 0;
    while (norm / std::pow(2.0, squarings) > 0.25) ++squarings;
    const ComplexMatrix scaled = a / std::pow(2.0, squarings);
    ComplexMatrix term = ComplexMatrix::Identity(a.rows(), a.cols());
    ComplexMatrix sum = term;
    for (int k = 1; k <= 30; ++k) {
        term = term * scaled / static_cast<double>(k);
        sum += term;
    }
    for (int s = 0; s < squarings; ++s) sum = sum * sum;
    return sum;
}

inline double binary_entropy(double p) {
    double h = 0.0;
    if (p > 0.0) h -= p * std::log(p);
    if (p < 1.0) h -= (1.0 - p) * std::log(1.0 - p);
    return h;
}

// a >= b up to relative round-off; infinities compare exactly.
inline bool colder_or_equal(Beta a, Beta b, double rel = 1e-12) {
    if (!a.is_finite() || !b.is_finite()) return a >= b;
    return a.value() >= b.value() - rel * std::max(1.0, std::abs(b.value()));
}

}  // namespace efftemp::testing
