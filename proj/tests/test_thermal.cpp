#include <doctest.h>

#include <cmath>
#include <limits>

#include "efftemp/errors.hpp"
#include "efftemp/thermal.hpp"
#include "support.hpp"

using namespace efftemp;
using namespace efftemp::testing;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}

TEST_SUITE("thermal") {

TEST_CASE("gibbs_by_beta qubit values") {
    auto p = gibbs_populations({0.0, 1.0}, Beta(0.0));
    CHECK(p[0] == doctest::Approx(0.5));
    p = gibbs_populations({0.0, 1.0}, Beta::plus_infinity());
    CHECK(p[0] == 1.0);
    CHECK(p[1] == 0.0);
    p = gibbs_populations({0.0, 1.0}, Beta(std::log(4.0)));
    CHECK(p[0] == doctest::Approx(0.8).epsilon(1e-14));
    CHECK(p[1] == doctest::Approx(0.2).epsilon(1e-14));
}

TEST_CASE("gibbs_by_beta at the infinities uses the degenerate edge subspaces") {
    auto p = gibbs_populations({0.0, 0.0, 1.0, 2.0, 2.0}, Beta::plus_infinity());
    CHECK(p == std::vector<double>{0.5, 0.5, 0.0, 0.0, 0.0});
    p = gibbs_populations({0.0, 0.0, 1.0, 2.0, 2.0}, Beta::minus_infinity());
    CHECK(p == std::vector<double>{0.0, 0.0, 0.0, 0.5, 0.5});
}

TEST_CASE("gibbs_by_beta survives extreme beta") {
    const auto p = gibbs_populations({0.0, 1.0, 2.0}, Beta(1e4));
    CHECK(p[0] == doctest::Approx(1.0));
    const auto q = gibbs_populations({0.0, 1.0, 2.0}, Beta(-1e4));
    CHECK(q[2] == doctest::Approx(1.0));
}

TEST_CASE("gibbs_by_energy qubit inversions") {
    CHECK(gibbs_by_energy({0.0, 1.0}, 0.5).beta.value() == doctest::Approx(0.0));
    CHECK(gibbs_by_energy({0.0, 1.0}, 0.2).beta.value() == doctest::Approx(std::log(4.0)).epsilon(1e-10));
    CHECK(gibbs_by_energy({0.0, 1.0}, 0.6).beta.value() == doctest::Approx(-std::log(1.5)).epsilon(1e-10));
    const auto r = gibbs_by_energy({0.0, 1.0}, 0.2);
    CHECK(std::abs(r.mean_energy - 0.2) <= 1e-12);
}

TEST_CASE("gibbs_by_energy rejects targets outside the open spectral interval") {
    CHECK_THROWS_AS(gibbs_by_energy({0.0, 1.0}, 0.0), NumericalError);
    CHECK_THROWS_AS(gibbs_by_energy({0.0, 1.0}, 1.0), NumericalError);
    CHECK_THROWS_AS(gibbs_by_energy({0.0, 1.0}, 1.5), NumericalError);
    CHECK_THROWS_AS(gibbs_by_energy({0.3, 0.3}, 0.5), NumericalError);
    CHECK_NOTHROW(gibbs_by_energy({0.3, 0.3}, 0.3));
}

TEST_CASE("t_star") {
    const std::vector<double> e{0.0, 0.4, 1.3};
    const auto gibbs = gibbs_by_beta(e, Beta(0.7));
    CHECK(t_star(QuantumSystem(e, gibbs.state)).value() == doctest::Approx(0.7).epsilon(1e-10));
    CHECK(t_star(QuantumSystem::diagonal({0.0, 1.0}, {0.8, 0.2})).value() ==
          doctest::Approx(std::log(4.0)).epsilon(1e-10));
    CHECK(t_star(QuantumSystem::diagonal({0.0, 1.0, 2.0}, {1.0 / 3, 1.0 / 3, 1.0 / 3})).value() ==
          doctest::Approx(0.0));
    CHECK(t_star(QuantumSystem::diagonal({0.0, 1.0}, {1.0, 0.0})).is_plus_infinity());
    CHECK(t_star(QuantumSystem::diagonal({0.0, 1.0}, {0.0, 1.0})).is_minus_infinity());
}

TEST_CASE("free energy") {
    const std::vector<double> e{0.0, 0.5, 2.0};
    const double beta = 1.3;
    const auto g = gibbs_by_beta(e, Beta(beta));
    CHECK(free_energy(QuantumSystem(e, g.state), beta) == doctest::Approx(-g.log_partition / beta).epsilon(1e-12));
    CHECK(free_energy(QuantumSystem::diagonal({0.0, 1.0}, {0.0, 1.0}), 1.0) == doctest::Approx(1.0));
    CHECK(free_energy(QuantumSystem::diagonal({0.0, 1.0}, {0.6, 0.4}), 1.0) ==
          doctest::Approx(0.4 - binary_entropy(0.6)));
    CHECK(free_energy(QuantumSystem::diagonal({0.0, 1.0}, {0.6, 0.4}), 1.0) == doctest::Approx(-0.27301).epsilon(1e-5));
    CHECK_THROWS_AS(free_energy(QuantumSystem::diagonal({0.0, 1.0}, {0.6, 0.4}), 0.0), InputError);
    CHECK(beta_free_energy(QuantumSystem::diagonal({0.0, 1.0}, {0.6, 0.4}), 0.0) ==
          doctest::Approx(-binary_entropy(0.6)));

    // The Gibbs state minimizes F at positive beta.
    Gen gen(11);
    const double f_gibbs = free_energy(QuantumSystem(e, g.state), beta);
    for (int trial = 0; trial < 20; ++trial) {
        CHECK(free_energy(QuantumSystem(e, gen.density(3)), beta) >= f_gibbs - 1e-12);
    }
}

TEST_CASE("energy variance") {
    CHECK(energy_variance(gibbs_by_beta({0.0, 1.0}, Beta(0.0))) == doctest::Approx(0.25));
    CHECK(energy_variance(gibbs_by_beta({0.0, 1.0}, Beta::plus_infinity())) == 0.0);
    CHECK(energy_variance(gibbs_by_beta({0.0, 1.0, 2.0}, Beta(0.0))) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("property: beta -> energy -> beta round trip") {
    Gen gen(12);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t d = 2 + gen.index(7);
        std::vector<double> e = gen.spectrum(d, 0.05, 0.5);
        const double beta = gen.uniform(-20.0, 20.0);
        const auto forward = gibbs_by_beta(e, Beta(beta));
        // Skip targets that sit within round-off of a spectral edge.
        if (forward.mean_energy - e.front() < 1e-10 || e.back() - forward.mean_energy < 1e-10) continue;
        const auto back = gibbs_by_energy(e, forward.mean_energy);
        CHECK(back.beta.value() == doctest::Approx(beta).epsilon(1e-9).scale(1.0));
    }
}

TEST_CASE("property: mean energy strictly decreasing in beta") {
    Gen gen(13);
    for (int trial = 0; trial < 20; ++trial) {
        const std::vector<double> e = gen.spectrum(2 + gen.index(5));
        double previous = kInf;
        for (double beta = -10.0; beta <= 10.0; beta += 0.25) {
            const double mean = gibbs_by_beta(e, Beta(beta)).mean_energy;
            CHECK(mean < previous);
            previous = mean;
        }
    }
}

TEST_CASE("property: entropy along the Gibbs family") {
    Gen gen(14);
    for (int trial = 0; trial < 10; ++trial) {
        const std::vector<double> e = gen.spectrum(3 + gen.index(3), 0.2, 1.0);
        const double lo = e.front(), hi = e.back();
        auto entropy = [&](double x) { return gibbs_by_energy(e, x).entropy; };
        const double h = 1e-4;
        for (int k = 1; k < 10; ++k) {
            const double x = lo + (hi - lo) * k / 10.0;
            const auto g = gibbs_by_energy(e, x);
            const double first = (entropy(x + h) - entropy(x - h)) / (2 * h);
            CHECK(std::abs(first - g.beta.value()) < 1e-5);
            const double hs = 1e-3;
            const double second = (entropy(x + hs) - 2 * entropy(x) + entropy(x - hs)) / (hs * hs);
            CHECK(second <= 1e-8);
            CHECK(std::abs(second + 1.0 / energy_variance(g)) < 1e-4 * std::max(1.0, 1.0 / energy_variance(g)));
        }
    }
}

TEST_CASE("quantum system validation") {
    CHECK_THROWS_AS(QuantumSystem::diagonal({1.0, 0.0}, {0.5, 0.5}), InputError);
    CHECK_THROWS_AS(QuantumSystem::diagonal({0.0, 1.0}, {0.5, 0.5, 0.0}), InputError);
    const auto sys = QuantumSystem::diagonal({0.0, 1.0}, {0.75, 0.25});
    CHECK(sys.mean_energy() == doctest::Approx(0.25));
}

TEST_CASE("system from a non-diagonal Hamiltonian") {
    ComplexMatrix h(2, 2);
    h << 0.5, 0.5, 0.5, 0.5;  // eigenvalues 0 and 1, excited state |+>
    ComplexVector plus = ComplexVector::Constant(2, 1.0 / std::sqrt(2.0));
    const auto sys = QuantumSystem::from_hamiltonian(HermitianOperator(h), DensityMatrix::pure(plus));
    CHECK(sys.energies()[0] == doctest::Approx(0.0));
    CHECK(sys.energies()[1] == doctest::Approx(1.0));
    CHECK(sys.populations()[1] == doctest::Approx(1.0));
    CHECK(sys.mean_energy() == doctest::Approx(1.0));
}

}
