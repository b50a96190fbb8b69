// Scenario documents and shipped presets.
//
// A scenario is a JSON document with the sections
//   isotherm : a[], b[], epsilon
//   physics  : u, and exactly one of Da | Nt   (Da = u / (2 Nt), unit column)
//   grid     : m
//   time     : dt_over_dz, t_final, snapshots[]
//   injection: segments[] of { t_start, t_end, c[] }
//   scheme   : kind, newton_tol, newton_max_iter
// plus an optional top-level "name" used as the output file prefix. Unknown
// keys anywhere are rejected; all validation failures throw ConfigError.

#ifndef EDCHROM_SCENARIO_HPP
#define EDCHROM_SCENARIO_HPP

#include <string>
#include <vector>

#include "edchrom/integrate.hpp"

namespace edchrom {

struct Scenario {
    std::string name;
    RunConfig config;
};

Scenario parse_scenario_text(const std::string& text, const std::string& fallback_name);
Scenario load_scenario(const std::string& path);

// Canonical form: parse_scenario_text(emit_scenario(s)) reproduces s exactly.
std::string emit_scenario(const Scenario& s);

std::vector<std::string> preset_names();
Scenario make_preset(const std::string& name);  // ConfigError for unknown names

} // namespace edchrom

#endif
