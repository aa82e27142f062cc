#include "efftemp/system_file.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "efftemp/errors.hpp"

namespace efftemp {

namespace {

using nlohmann::json;

std::vector<double> number_list(const json& doc, const char* key) {
    const json& node = doc.at(key);
    if (!node.is_array()) throw InputError(std::string("system file: '") + key + "' must be an array of numbers");
    std::vector<double> out;
    out.reserve(node.size());
    for (const json& x : node) {
        if (!x.is_number()) throw InputError(std::string("system file: '") + key + "' must contain only numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

std::vector<std::vector<double>> number_matrix(const json& doc, const char* key, std::size_t dim) {
    const json& node = doc.at(key);
    if (!node.is_array() || node.size() != dim) {
        throw InputError(std::string("system file: '") + key + "' must be a " + std::to_string(dim) + "x" +
                         std::to_string(dim) + " array");
    }
    std::vector<std::vector<double>> out;
    for (const json& row : node) {
        if (!row.is_array() || row.size() != dim) {
            throw InputError(std::string("system file: every row of '") + key + "' must have " + std::to_string(dim) +
                             " entries");
        }
        std::vector<double> r;
        for (const json& x : row) {
            if (!x.is_number()) throw InputError(std::string("system file: '") + key + "' must contain only numbers");
            r.push_back(x.get<double>());
        }
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace

QuantumSystem parse_system_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("system file: invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("energies")) {
        throw InputError("system file: expected an object with an 'energies' array");
    }
    const std::vector<double> energies = number_list(doc, "energies");
    const std::size_t d = energies.size();
    if (d == 0) throw InputError("system file: 'energies' is empty");
    check_dimension(d, "system file");

    const bool has_pops = doc.contains("populations");
    const bool has_matrix = doc.contains("rho_re");
    if (has_pops == has_matrix) {
        throw InputError("system file: give exactly one of 'populations' or 'rho_re' (with optional 'rho_im')");
    }
    if (!has_matrix && doc.contains("rho_im")) throw InputError("system file: 'rho_im' without 'rho_re'");

    ComplexMatrix rho = ComplexMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    if (has_pops) {
        const std::vector<double> p = number_list(doc, "populations");
        if (p.size() != d) throw InputError("system file: 'populations' and 'energies' differ in length");
        for (std::size_t i = 0; i < d; ++i) rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = p[i];
    } else {
        const auto re = number_matrix(doc, "rho_re", d);
        std::vector<std::vector<double>> im(d, std::vector<double>(d, 0.0));
        if (doc.contains("rho_im")) im = number_matrix(doc, "rho_im", d);
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = Complex(re[i][j], im[i][j]);
            }
        }
    }

    std::vector<std::size_t> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return energies[a] < energies[b]; });
    std::vector<double> sorted(d);
    ComplexMatrix permuted(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; ++i) {
        sorted[i] = energies[order[i]];
        for (std::size_t j = 0; j < d; ++j) {
            permuted(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                rho(static_cast<Eigen::Index>(order[i]), static_cast<Eigen::Index>(order[j]));
        }
    }
    return QuantumSystem(std::move(sorted), DensityMatrix(std::move(permuted)));
}

QuantumSystem load_system_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open system file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_system_json(buf.str());
}

std::string system_to_json(const QuantumSystem& system) {
    const DensityMatrix rho = system.energy_basis_state();
    json doc;
    doc["energies"] = system.energies();
    json re = json::array(), im = json::array();
    for (Eigen::Index i = 0; i < rho.matrix().rows(); ++i) {
        json r = json::array(), m = json::array();
        for (Eigen::Index j = 0; j < rho.matrix().cols(); ++j) {
            r.push_back(rho.matrix()(i, j).real());
            m.push_back(rho.matrix()(i, j).imag());
        }
        re.push_back(std::move(r));
        im.push_back(std::move(m));
    }
    doc["rho_re"] = std::move(re);
    doc["rho_im"] = std::move(im);
    return doc.dump(2);
}

}  // namespace efftemp
