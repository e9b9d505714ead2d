#pragma once

#include <string>

#include "json.hpp"
#include "spinnet/lattice.hpp"

namespace spinnet {

// Accepts either a builder object ({"builder":"chain","sites":n,"alpha":a},
// {"builder":"y"|"bifurcated_y","l1":..,"l2":..,"alpha":a}) or an inline
// network ({"sites":..,"edges":..,"energies":..,"alpha":..}). locus prefixes
// error messages, e.g. "network".
SpinNetwork network_from_json(const nlohmann::json& j, const std::string& locus);

nlohmann::json network_to_json(const SpinNetwork& network);

// Shared helpers for schema handling.
void reject_unknown_keys(const nlohmann::json& j, const std::string& locus,
                         const std::vector<std::string>& allowed);
double require_number(const nlohmann::json& j, const std::string& locus);
int require_int(const nlohmann::json& j, const std::string& locus);

}  // namespace spinnet
