#pragma once

#include <string>

#include "efftemp/thermal.hpp"

namespace efftemp {

/// Parses a system description:
///
///   {"energies": [...], "populations": [...]}
///   {"energies": [...], "rho_re": [[...]], "rho_im": [[...]]}
///
/// The state is written in the energy basis. rho_im may be omitted for a
/// real state. Energies need not be sorted; levels (and the matching rows and
/// columns of the state) are reordered to ascending energy.
/// Throws InputError on malformed JSON or invalid content.
QuantumSystem parse_system_json(const std::string& text);
QuantumSystem load_system_file(const std::string& path);

/// Serializes a system in the dense-matrix form.
std::string system_to_json(const QuantumSystem& system);

}  // namespace efftemp
