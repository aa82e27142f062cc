#include "efftemp/catalysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "efftemp/errors.hpp"

namespace efftemp {

namespace {

constexpr double kDefaultTimeSpan = 30.0;
constexpr std::size_t kDefaultSteps = 600;

ComplexMatrix annihilation(std::size_t levels) {
    const auto n = static_cast<Eigen::Index>(levels);
    ComplexMatrix a = ComplexMatrix::Zero(n, n);
    for (Eigen::Index k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
    return a;
}

ComplexMatrix sigma_plus() {
    ComplexMatrix s = ComplexMatrix::Zero(2, 2);
    s(1, 0) = 1.0;  // |e><g|
    return s;
}

DensityMatrix evolve(const ComplexMatrix& u, const DensityMatrix& rho) {
    return DensityMatrix(u * rho.matrix() * u.adjoint());
}

const std::vector<double>& time_grid_or_default(const JCConfig& config, std::vector<double>& storage) {
    if (!config.time_grid.empty()) return config.time_grid;
    storage = JCConfig::uniform_grid(kDefaultTimeSpan, kDefaultSteps);
    return storage;
}

}  // namespace

std::vector<double> JCConfig::uniform_grid(double t_max, std::size_t steps) {
    if (steps == 0 || !(t_max > 0.0)) throw InputError("time grid needs steps >= 1 and t_max > 0");
    std::vector<double> grid(steps + 1);
    for (std::size_t k = 0; k <= steps; ++k) grid[k] = t_max * static_cast<double>(k) / static_cast<double>(steps);
    return grid;
}

void validate(const JCConfig& config) {
    if (config.omega_a != config.omega_r) {
        throw InputError("JCConfig: cavity and atom must be resonant (omega_a == omega_r)");
    }
    if (!(config.omega_a > 0.0) || !std::isfinite(config.omega_a)) throw InputError("JCConfig: omega must be positive");
    if (config.fock_levels < 2) throw InputError("JCConfig: at least two Fock levels are required");
    if (!(config.tau > 0.0) || !std::isfinite(config.tau)) throw InputError("JCConfig: tau must be positive");
    if (!std::isfinite(config.g)) throw InputError("JCConfig: coupling must be finite");
    check_dimension(2 * config.fock_levels, "JCConfig");
}

HermitianOperator jc_hamiltonian(const JCConfig& config) {
    validate(config);
    const std::size_t n = config.fock_levels;
    const auto nn = static_cast<Eigen::Index>(n);
    const ComplexMatrix a = annihilation(n);
    const ComplexMatrix id_a = ComplexMatrix::Identity(nn, nn);
    const ComplexMatrix id_r = ComplexMatrix::Identity(2, 2);
    ComplexMatrix excited = ComplexMatrix::Zero(2, 2);
    excited(1, 1) = 1.0;
    const ComplexMatrix sp = sigma_plus();

    ComplexMatrix h = config.omega_a * kron(a.adjoint() * a, id_r) + config.omega_r * kron(id_a, excited) +
                      config.g * (kron(a, sp) + kron(a.adjoint(), sp.adjoint()));
    return HermitianOperator(std::move(h));
}

HermitianOperator excitation_number(std::size_t fock_levels) {
    const auto nn = static_cast<Eigen::Index>(fock_levels);
    const ComplexMatrix a = annihilation(fock_levels);
    ComplexMatrix excited = ComplexMatrix::Zero(2, 2);
    excited(1, 1) = 1.0;
    return HermitianOperator(kron(a.adjoint() * a, ComplexMatrix::Identity(2, 2)) +
                             kron(ComplexMatrix::Identity(nn, nn), excited));
}

std::vector<double> cavity_energies(const JCConfig& config) {
    std::vector<double> e(config.fock_levels);
    for (std::size_t k = 0; k < e.size(); ++k) e[k] = config.omega_a * static_cast<double>(k);
    return e;
}

std::vector<double> atom_energies(const JCConfig& config) { return {0.0, config.omega_r}; }

DensityMatrix uniform_superposition(std::size_t dim) {
    return DensityMatrix::pure(ComplexVector::Ones(static_cast<Eigen::Index>(dim)));
}

double offdiagonal_norm(const DensityMatrix& rho) {
    double sum = 0.0;
    const ComplexMatrix& m = rho.matrix();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (i != j) sum += std::abs(m(i, j));
        }
    }
    return sum;
}

CatalysisResult solve_catalyst_fixed_point(const JCConfig& config, const DensityMatrix& cavity_state) {
    const HermitianOperator h = jc_hamiltonian(config);
    if (cavity_state.dim() != config.fock_levels) {
        throw InputError("solve_catalyst_fixed_point: cavity state dimension does not match the Fock truncation");
    }
    const ComplexMatrix u = unitary_evolution(h, config.tau);
    const SuperOperator channel = SuperOperator::reduced_dynamics(u, cavity_state, 2);
    FixedPoint fp = channel_fixed_point(channel);
    return CatalysisResult{std::move(fp.state), fp.residual, fp.method, {}, 0.0, 0.0};
}

CatalysisResult run_time_series(const JCConfig& config, const DensityMatrix& cavity_state,
                                const DensityMatrix& atom_state) {
    const HermitianOperator h = jc_hamiltonian(config);
    const std::size_t n = config.fock_levels;
    if (cavity_state.dim() != n || atom_state.dim() != 2) {
        throw InputError("run_time_series: state dimensions do not match the configuration");
    }
    const EigenDecomposition eig = hermitian_eig(h);
    const DensityMatrix joint = tensor_product(cavity_state, atom_state);
    const std::vector<double> e_cavity = cavity_energies(config);
    const std::vector<double> e_atom = atom_energies(config);

    std::vector<double> storage;
    const std::vector<double>& grid = time_grid_or_default(config, storage);

    CatalysisResult result{atom_state, 0.0, FixedPointMethod::Spectral, {}, 0.0, 0.0};
    result.time_series.reserve(grid.size());
    for (double t : grid) {
        const DensityMatrix state = evolve(unitary_evolution(eig, t), joint);
        const DensityMatrix cavity = partial_trace(state, n, 2, Keep::First);
        const DensityMatrix atom = partial_trace(state, n, 2, Keep::Second);
        TimeSample sample{t,
                          single_copy_effective(QuantumSystem(e_cavity, cavity)),
                          single_copy_effective(QuantumSystem(e_atom, atom)),
                          trace_distance(atom, atom_state),
                          offdiagonal_norm(cavity),
                          cavity.matrix()(static_cast<Eigen::Index>(n - 1), static_cast<Eigen::Index>(n - 1)).real()};
        result.max_top_level_population = std::max(result.max_top_level_population, sample.top_level_population);
        result.time_series.push_back(sample);
    }
    const DensityMatrix at_tau = partial_trace(evolve(unitary_evolution(eig, config.tau), joint), n, 2, Keep::Second);
    result.atom_distance_at_tau = trace_distance(at_tau, atom_state);
    return result;
}

CatalysisResult run_catalysis(const JCConfig& config, const DensityMatrix& cavity_state) {
    CatalysisResult fixed = solve_catalyst_fixed_point(config, cavity_state);
    CatalysisResult series = run_time_series(config, cavity_state, fixed.catalyst_state);
    series.fixed_point_residual = fixed.fixed_point_residual;
    series.method = fixed.method;
    return series;
}

// ---------------------------------------------------------------------------

DensityMatrix QutritCatalystSetup::reference_frame_state() {
    const double r = 1.0 / std::sqrt(2.0);
    ComplexMatrix m(2, 2);
    // (1/2)(1 - r) I + r |+><+|, |+><+| = [[1/2, 1/2], [1/2, 1/2]]
    m << 0.5 * (1.0 - r) + 0.5 * r, 0.5 * r, 0.5 * r, 0.5 * (1.0 - r) + 0.5 * r;
    return DensityMatrix(std::move(m));
}

DensityMatrix qutrit_state(double lambda, double beta) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw InputError("qutrit_state: lambda must lie in [0, 1]");
    if (!std::isfinite(beta)) throw InputError("qutrit_state: beta must be finite");
    const std::vector<double> p = gibbs_populations({0.0, 1.0, 2.0}, Beta(beta));
    ComplexMatrix m = (1.0 - lambda) * DensityMatrix::diagonal(p).matrix() + lambda * uniform_superposition(3).matrix();
    return DensityMatrix(std::move(m));
}

ComplexMatrix qutrit_rotation() {
    const double c = 1.0 / std::sqrt(2.0);
    ComplexMatrix v = ComplexMatrix::Identity(6, 6);
    // Blocks (first, second): (|01>, |10>) = (1, 2) and (|20>, |11>) = (4, 3).
    // V|first> = c|first> - c|second>, V|second> = c|first> + c|second>.
    for (auto [first, second] : {std::pair{1, 2}, std::pair{4, 3}}) {
        v(first, first) = c;
        v(second, second) = c;
        v(first, second) = c;
        v(second, first) = -c;
    }
    return v;
}

HermitianOperator qutrit_joint_hamiltonian() {
    return HermitianOperator(kron(HermitianOperator::diagonal({0.0, 1.0, 2.0}).matrix(), ComplexMatrix::Identity(2, 2)) +
                             kron(ComplexMatrix::Identity(3, 3), HermitianOperator::diagonal({0.0, 1.0}).matrix()));
}

QutritCatalystOutcome qutrit_catalyst_protocol(const QutritCatalystSetup& setup) {
    if (setup.phi_r.dim() != 2) throw InputError("qutrit_catalyst_protocol: catalyst must be a qubit");
    const DensityMatrix rho_a = qutrit_state(setup.lambda, setup.beta);
    const ComplexMatrix v = qutrit_rotation();
    const DensityMatrix joint(v * kron(rho_a.matrix(), setup.phi_r.matrix()) * v.adjoint());
    DensityMatrix sigma_a = partial_trace(joint, 3, 2, Keep::First);
    DensityMatrix sigma_r = partial_trace(joint, 3, 2, Keep::Second);
    const EffectiveTempPair temps = single_copy_effective(QuantumSystem({0.0, 1.0, 2.0}, sigma_a));
    const double correlation = trace_norm(joint.matrix() - kron(sigma_a.matrix(), sigma_r.matrix()));
    const double residual = trace_distance(sigma_r, setup.phi_r);
    return QutritCatalystOutcome{std::move(sigma_a), std::move(sigma_r), temps, correlation, residual};
}

FixedPoint tune_catalyst(const QutritCatalystSetup& setup) {
    const DensityMatrix rho_a = qutrit_state(setup.lambda, setup.beta);
    return channel_fixed_point(SuperOperator::reduced_dynamics(qutrit_rotation(), rho_a, 2));
}

}  // namespace efftemp
