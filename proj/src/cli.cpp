#include "efftemp/cli.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "efftemp/catalysis.hpp"
#include "efftemp/effective.hpp"
#include "efftemp/errors.hpp"
#include "efftemp/oracle.hpp"
#include "efftemp/system_file.hpp"

namespace efftemp {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kTimeSeriesHeader = "t,beta_c_A,beta_h_A,beta_c_R,beta_h_R,atom_distance,cavity_coherence";
constexpr const char* kSweepHeader = "lambda,beta_c_A,beta_h_A,beta_c_AR,beta_h_AR,catalyst_residual";
constexpr const char* kSpectrumHeader = "i,j,energy_i,energy_j,beta_ij";

struct Report {
    ordered_json results = ordered_json::object();
    std::vector<std::string> warnings;
    std::string digest;
};

ordered_json number_json(double x) {
    if (std::isfinite(x)) return x;
    if (std::isnan(x)) return "nan";
    return x > 0 ? "inf" : "-inf";
}

ordered_json beta_json(Beta b) { return number_json(b.value()); }

// T = 1/beta: beta = 0 is infinite temperature, beta = +-inf are T = +-0.
ordered_json temperature_json(Beta b) {
    if (b.value() == 0.0) return "inf";
    if (b.is_plus_infinity()) return 0.0;
    if (b.is_minus_infinity()) return -0.0;
    return 1.0 / b.value();
}

void put_pair(ordered_json& node, const EffectiveTempPair& pair, bool kelvin, const std::string& suffix = "") {
    node["beta_c" + suffix] = beta_json(pair.beta_c);
    node["beta_h" + suffix] = beta_json(pair.beta_h);
    if (kelvin) {
        node["T_c" + suffix] = temperature_json(pair.beta_c);
        node["T_h" + suffix] = temperature_json(pair.beta_h);
    }
}

ordered_json matrix_json(const ComplexMatrix& m) {
    ordered_json re = ordered_json::array(), im = ordered_json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        ordered_json r = ordered_json::array(), c = ordered_json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            r.push_back(m(i, j).real());
            c.push_back(m(i, j).imag());
        }
        re.push_back(std::move(r));
        im.push_back(std::move(c));
    }
    return ordered_json{{"re", std::move(re)}, {"im", std::move(im)}};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << content;
}

std::string csv_row(const std::vector<double>& values) {
    std::string row;
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (k) row += ',';
        row += format_number(values[k]);
    }
    return row + '\n';
}

QuantumSystem read_system(const std::string& path, Report& report) {
    const std::string text = read_file(path);
    report.digest = fnv1a_hex(text);
    return parse_system_json(text);
}

// ---------------------------------------------------------------------------

struct SingleOptions {
    std::string path;
    std::string out;
    bool kelvin = false;
};

void cmd_single(const SingleOptions& opt, Report& report) {
    const QuantumSystem system = read_system(opt.path, report);
    const VirtualTempSpectrum spectrum = virtual_spectrum(system);
    const EffectiveTempPair temps = extremal_temperatures(spectrum);
    const Beta star = t_star(system);

    auto& r = report.results;
    r["dim"] = system.dim();
    put_pair(r, temps, opt.kelvin);
    r["beta_star"] = beta_json(star);
    if (opt.kelvin) r["T_star"] = temperature_json(star);
    r["mean_energy"] = system.mean_energy();
    ordered_json vts = ordered_json::array();
    std::string csv = std::string(kSpectrumHeader) + '\n';
    for (const auto& e : spectrum.entries) {
        vts.push_back({{"i", e.i}, {"j", e.j}, {"beta_ij", beta_json(e.beta)}});
        csv += std::to_string(e.i) + ',' + std::to_string(e.j) + ',' +
               csv_row({system.energies()[e.i], system.energies()[e.j], e.beta.value()});
    }
    r["virtual_spectrum"] = std::move(vts);
    if (!opt.out.empty()) {
        write_file(opt.out, csv);
        r["csv"] = opt.out;
    }
}

struct AsymptoticOptions {
    std::string path;
    double delta = 0.0;
    bool expansion = false;
    bool kelvin = false;
};

void cmd_asymptotic(const AsymptoticOptions& opt, Report& report) {
    QuantumSystem system = read_system(opt.path, report);
    const double e = system.mean_energy();
    const AsymptoticRequest req{std::move(system), opt.delta};
    const EffectiveTempPair exact = asymptotic_effective(req);

    auto& r = report.results;
    r["delta"] = opt.delta;
    r["mean_energy"] = e;
    put_pair(r, exact, opt.kelvin);
    const GibbsSolveResult up = gibbs_by_energy(req.system.energies(), e + opt.delta);
    const GibbsSolveResult down = gibbs_by_energy(req.system.energies(), e - opt.delta);
    r["entropy"] = von_neumann_entropy(req.system.rho());
    r["gibbs_up"] = {{"beta", beta_json(up.beta)}, {"mean_energy", up.mean_energy}, {"entropy", up.entropy}};
    r["gibbs_down"] = {{"beta", beta_json(down.beta)}, {"mean_energy", down.mean_energy}, {"entropy", down.entropy}};
    if (opt.expansion) {
        const EffectiveTempPair approx = expansion_effective(req);
        ordered_json node = ordered_json::object();
        put_pair(node, approx, opt.kelvin);
        const GibbsSolveResult ref = gibbs_by_energy(req.system.energies(), e);
        node["beta_star"] = beta_json(ref.beta);
        node["energy_variance"] = energy_variance(ref);
        node["entropy_deficit"] = ref.entropy - von_neumann_entropy(req.system.rho());
        r["expansion"] = std::move(node);
    }
}

struct OracleOptions {
    std::string path;
    std::optional<double> beta_bath;
    std::size_t random = 0;
    std::optional<std::uint64_t> seed;
};

void cmd_oracle(const OracleOptions& opt, const CliEnvironment& env, Report& report) {
    auto& r = report.results;
    if (opt.random > 0) {
        if (!opt.seed) throw InputError("oracle --random requires an explicit --seed");
        constexpr std::size_t kBathsPerSystem = 5;
        const OracleTrialSummary s = run_oracle_trials(opt.random, kBathsPerSystem, *opt.seed);
        report.digest = fnv1a_hex("oracle-random:" + std::to_string(opt.random) + ":" + std::to_string(*opt.seed));
        r["systems"] = s.systems;
        r["cases"] = s.cases;
        r["disagreements"] = s.disagreements;
        r["worst_stochasticity_residual"] = s.worst_stochasticity_residual;
        if (s.disagreements > 0) {
            throw NumericalError("LP oracle disagreed with the virtual-temperature prediction in " +
                                 std::to_string(s.disagreements) + " cases");
        }
        if (!opt.path.empty()) report.warnings.push_back("system file ignored in --random mode");
        return;
    }
    if (opt.path.empty()) throw InputError("oracle needs a system file or --random N");
    if (!opt.beta_bath) throw InputError("oracle needs --beta-bath");
    const QuantumSystem system = read_system(opt.path, report);
    const std::size_t cap = env.max_dim.value_or(kOracleMaxDimension);
    const HeatSign lp = heat_sign_oracle(system, *opt.beta_bath, cap);
    const EffectiveTempPair temps = single_copy_effective(system);
    const HeatSign predicted = predicted_heat_sign(temps, *opt.beta_bath);

    GibbsStochasticLP request{system.populations(), system.energies(), *opt.beta_bath, Sense::Maximize};
    double total = 0.0;
    for (double p : request.populations) total += p;
    for (double& p : request.populations) p /= total;
    const HeatOptimum best = max_energy_gain(request);

    r["beta_bath"] = *opt.beta_bath;
    r["value"] = lp.max_gain;
    r["max_energy_loss"] = lp.max_loss;
    r["can_cool"] = lp.can_cool;
    r["can_heat"] = lp.can_heat;
    put_pair(r, temps, false);
    r["predicted_can_cool"] = predicted.can_cool;
    r["predicted_can_heat"] = predicted.can_heat;
    const bool agree = lp.can_cool == predicted.can_cool && lp.can_heat == predicted.can_heat;
    r["agreement"] = agree;
    r["stochasticity_residual"] = gibbs_stochastic_residual(best, system.energies(), *opt.beta_bath).max();
    ordered_json g = ordered_json::array();
    for (std::size_t i = 0; i < best.dim; ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t j = 0; j < best.dim; ++j) row.push_back(best.at(i, j));
        g.push_back(std::move(row));
    }
    r["optimal_matrix"] = std::move(g);
    if (!agree) report.warnings.push_back("LP verdict disagrees with the virtual-temperature prediction");
}

struct JcOptions {
    double omega = 1.0;
    double g = 0.1;
    double tau = 28.5;
    std::size_t fock = 3;
    std::size_t steps = 600;
    double t_max = 30.0;
    std::string out;
};

void cmd_jc(const JcOptions& opt, Report& report) {
    JCConfig config;
    config.omega_a = opt.omega;
    config.omega_r = opt.omega;
    config.g = opt.g;
    config.tau = opt.tau;
    config.fock_levels = opt.fock;
    config.time_grid = JCConfig::uniform_grid(opt.t_max, opt.steps);
    validate(config);
    report.digest = fnv1a_hex("jc:" + format_number(opt.omega) + ":" + format_number(opt.g) + ":" +
                              format_number(opt.tau) + ":" + std::to_string(opt.fock) + ":" +
                              std::to_string(opt.steps) + ":" + format_number(opt.t_max));

    const DensityMatrix cavity = uniform_superposition(opt.fock);
    const CatalysisResult res = run_catalysis(config, cavity);
    if (res.fixed_point_residual > 1e-10) {
        throw NumericalError("catalyst fixed-point residual " + format_number(res.fixed_point_residual) +
                             " above 1e-10");
    }

    auto& r = report.results;
    r["fixed_point_residual"] = res.fixed_point_residual;
    r["fixed_point_method"] = res.method == FixedPointMethod::Spectral ? "spectral" : "averaged_iteration";
    r["catalyst_state"] = matrix_json(res.catalyst_state.matrix());
    r["atom_distance_at_tau"] = res.atom_distance_at_tau;
    r["cavity_coherence_initial"] = res.time_series.front().cavity_coherence;
    r["max_top_fock_population"] = res.max_top_level_population;
    r["rows"] = res.time_series.size();
    report.warnings.push_back("Fock truncation at N = " + std::to_string(opt.fock) +
                              "; largest occupation of the top level over the grid = " +
                              format_number(res.max_top_level_population));

    if (!opt.out.empty()) {
        std::string csv = std::string(kTimeSeriesHeader) + '\n';
        for (const auto& s : res.time_series) {
            csv += csv_row({s.t, s.cavity.beta_c.value(), s.cavity.beta_h.value(), s.atom.beta_c.value(),
                            s.atom.beta_h.value(), s.atom_distance, s.cavity_coherence});
        }
        write_file(opt.out, csv);
        r["csv"] = opt.out;
    } else {
        report.warnings.push_back("no --out given; time series not written");
    }
}

struct QutritOptions {
    double lambda = 1.0;
    double beta = 0.0;
    bool sweep = false;
    std::size_t copies = 0;
    std::string out;
    bool kelvin = false;
};

struct CatalyticPoint {
    EffectiveTempPair bare;
    QutritCatalystOutcome outcome;
    FixedPoint catalyst;
};

CatalyticPoint catalytic_point(double lambda, double beta) {
    QutritCatalystSetup setup;
    setup.lambda = lambda;
    setup.beta = beta;
    FixedPoint catalyst = tune_catalyst(setup);
    if (catalyst.residual > 1e-10) {
        throw NumericalError("catalyst fixed-point residual " + format_number(catalyst.residual) + " above 1e-10");
    }
    setup.phi_r = catalyst.state;
    QutritCatalystOutcome outcome = qutrit_catalyst_protocol(setup);
    const EffectiveTempPair bare = single_copy_effective(QuantumSystem({0.0, 1.0, 2.0}, qutrit_state(lambda, beta)));
    return CatalyticPoint{bare, std::move(outcome), std::move(catalyst)};
}

void cmd_qutrit(const QutritOptions& opt, Report& report) {
    if (!(opt.lambda >= 0.0 && opt.lambda <= 1.0)) throw InputError("--lambda must lie in [0, 1]");
    if (opt.sweep && opt.out.empty()) throw InputError("--sweep needs --out for the CSV");
    report.digest = fnv1a_hex("qutrit:" + format_number(opt.lambda) + ":" + format_number(opt.beta) + ":" +
                              std::to_string(opt.sweep) + ":" + std::to_string(opt.copies));

    const CatalyticPoint point = catalytic_point(opt.lambda, opt.beta);
    auto& r = report.results;
    r["lambda"] = opt.lambda;
    r["beta"] = opt.beta;
    r["sigma_A"] = matrix_json(point.outcome.sigma_a.matrix());
    r["sigma_A_populations"] = point.outcome.sigma_a.diagonal_entries();
    r["catalyst_state"] = matrix_json(point.catalyst.state.matrix());
    r["catalyst_fixed_point_residual"] = point.catalyst.residual;
    r["catalyst_residual"] = point.outcome.catalyst_residual;
    r["reference_catalyst_distance"] =
        trace_distance(point.catalyst.state, QutritCatalystSetup::reference_frame_state());
    r["correlation_norm"] = point.outcome.correlation_norm;
    ordered_json bare = ordered_json::object();
    put_pair(bare, point.bare, opt.kelvin);
    r["without_catalyst"] = std::move(bare);
    ordered_json cat = ordered_json::object();
    put_pair(cat, point.outcome.temps, opt.kelvin);
    r["with_catalyst"] = std::move(cat);

    if (opt.copies > 0) {
        const QuantumSystem a({0.0, 1.0, 2.0}, qutrit_state(opt.lambda, opt.beta));
        ordered_json table = ordered_json::array();
        for (std::size_t n = 1; n <= opt.copies; ++n) {
            const EffectiveTempPair t = tensor_power_effective(a, n);
            ordered_json row = {{"n", n}};
            put_pair(row, t, opt.kelvin);
            table.push_back(std::move(row));
        }
        r["copies"] = std::move(table);
    }

    if (opt.sweep) {
        constexpr int kSweepPoints = 21;
        std::string csv = std::string(kSweepHeader) + '\n';
        for (int k = 0; k < kSweepPoints; ++k) {
            const double lambda = static_cast<double>(k) / (kSweepPoints - 1);
            const CatalyticPoint p = catalytic_point(lambda, opt.beta);
            csv += csv_row({lambda, p.bare.beta_c.value(), p.bare.beta_h.value(), p.outcome.temps.beta_c.value(),
                            p.outcome.temps.beta_h.value(), p.outcome.catalyst_residual});
        }
        write_file(opt.out, csv);
        r["csv"] = opt.out;
    }
}

std::string echo(const std::vector<std::string>& args) {
    std::string s;
    for (const auto& a : args) {
        if (!s.empty()) s += ' ';
        s += a;
    }
    return s;
}

}  // namespace

// ---------------------------------------------------------------------------

CliEnvironment CliEnvironment::from_process() {
    CliEnvironment env;
    if (const char* v = std::getenv("EFFTEMP_MAX_DIM"); v != nullptr && *v != '\0') {
        char* end = nullptr;
        const unsigned long long parsed = std::strtoull(v, &end, 10);
        if (end != nullptr && *end == '\0' && parsed > 0) env.max_dim = static_cast<std::size_t>(parsed);
    }
    return env;
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const CliEnvironment& env) {
    CLI::App app{"Operational effective temperatures of finite-dimensional quantum states", "efftemp"};
    app.require_subcommand(1);

    SingleOptions single;
    auto* sub_single = app.add_subcommand("single", "Virtual temperature spectrum, beta_c, beta_h and beta*");
    sub_single->add_option("file", single.path, "System file (JSON)")->required();
    sub_single->add_option("--out", single.out, "Write the virtual temperature spectrum as CSV");
    sub_single->add_flag("--kelvin", single.kelvin, "Also report temperatures T = 1/beta");

    AsymptoticOptions asym;
    auto* sub_asym = app.add_subcommand("asymptotic", "Many-copy effective temperatures at heat delta per copy");
    sub_asym->add_option("file", asym.path, "System file (JSON)")->required();
    sub_asym->add_option("--delta", asym.delta, "Heat per copy (energy units)")->required();
    sub_asym->add_flag("--expansion", asym.expansion, "Also report the small-delta expansion");
    sub_asym->add_flag("--kelvin", asym.kelvin, "Also report temperatures T = 1/beta");

    OracleOptions oracle;
    double bath = 0.0;
    std::uint64_t seed = 0;
    auto* sub_oracle = app.add_subcommand("oracle", "Linear-programming check of heat-flow directions");
    sub_oracle->add_option("file", oracle.path, "System file (JSON)");
    auto* bath_opt = sub_oracle->add_option("--beta-bath", bath, "Inverse temperature of the thermometer bath");
    sub_oracle->add_option("--random", oracle.random, "Run N seeded random systems (5 baths each)");
    auto* seed_opt = sub_oracle->add_option("--seed", seed, "Seed for --random");

    JcOptions jc;
    auto* sub_jc = app.add_subcommand("jc", "Jaynes-Cummings catalysis time series");
    sub_jc->add_option("--omega", jc.omega, "Resonant frequency of cavity and atom");
    sub_jc->add_option("--g", jc.g, "Coupling strength");
    sub_jc->add_option("--tau", jc.tau, "Catalyst return time");
    sub_jc->add_option("--fock", jc.fock, "Fock-level truncation N");
    sub_jc->add_option("--steps", jc.steps, "Number of time steps (rows = steps + 1)");
    sub_jc->add_option("--t-max", jc.t_max, "End of the time grid");
    sub_jc->add_option("--out", jc.out, "Time-series CSV path");

    QutritOptions qutrit;
    auto* sub_qutrit = app.add_subcommand("qutrit", "Qutrit with a qubit reference-frame catalyst");
    sub_qutrit->add_option("--lambda", qutrit.lambda, "Weight of the coherent superposition");
    sub_qutrit->add_option("--beta", qutrit.beta, "Inverse temperature of the Gibbs component");
    sub_qutrit->add_flag("--sweep", qutrit.sweep, "Write a lambda-grid CSV to --out");
    sub_qutrit->add_option("--copies", qutrit.copies, "Tabulate tensor-power temperatures for n = 1..copies");
    sub_qutrit->add_option("--out", qutrit.out, "CSV path for --sweep");
    sub_qutrit->add_flag("--kelvin", qutrit.kelvin, "Also report temperatures T = 1/beta");

    std::vector<std::string> storage{"efftemp"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : storage) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "efftemp: " << e.what() << '\n';
        return kExitInput;
    }

    Report report;
    int status = kExitOk;
    std::string error;
    std::string command = app.get_subcommands().front()->get_name();
    try {
        if (*sub_single) {
            cmd_single(single, report);
        } else if (*sub_asym) {
            cmd_asymptotic(asym, report);
        } else if (*sub_oracle) {
            if (*bath_opt) oracle.beta_bath = bath;
            if (*seed_opt) oracle.seed = seed;
            cmd_oracle(oracle, env, report);
        } else if (*sub_jc) {
            cmd_jc(jc, report);
        } else if (*sub_qutrit) {
            cmd_qutrit(qutrit, report);
        }
    } catch (const InputError& e) {
        status = kExitInput;
        error = e.what();
    } catch (const NumericalError& e) {
        status = kExitNumerical;
        error = e.what();
    }

    ordered_json doc;
    doc["command"] = command;
    doc["args"] = echo(args);
    doc["input_digest"] = report.digest;
    doc["results"] = std::move(report.results);
    doc["warnings"] = report.warnings;
    if (!error.empty()) {
        doc["error"] = error;
        err << "efftemp: " << error << '\n';
    }
    doc["exit_status"] = status;
    out << doc.dump(2) << '\n';
    return status;
}

}  // namespace efftemp
