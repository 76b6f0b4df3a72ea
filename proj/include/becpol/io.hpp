#pragma once
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "becpol/model.hpp"

namespace becpol {

// plain key = value parameter file; '#' starts a comment, keys are the
// PhysicalParams fields plus a mandatory "unit_system = natural" guard and an
// optional "boson_interaction" cross-check (must reproduce 4 pi a_s / m).
// Unknown or duplicate keys and malformed numbers name the offending key.
PhysicalParams load_params(const std::string& path);
PhysicalParams parse_params(std::istream& in, const std::string& origin);

// %.12g: enough digits for a clean round-trip at the tolerances used here,
// short enough to keep the tables readable
std::string format_g12(double v);

// canonical provenance line: subcommand plus every physics- and
// sampling-relevant knob in fixed order; no timestamps, no thread counts,
// so identical inputs produce identical bytes
std::string provenance(const std::string& subcommand,
                       const std::vector<std::pair<std::string, std::string>>& items);
std::string params_signature(const PhysicalParams& p);

// comment lines (prefixed "# "), one header row, comma-separated cells,
// LF line endings
void write_table(std::ostream& out, const std::vector<std::string>& comments,
                 const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows);

std::vector<std::string> to_cells(const std::vector<double>& row);

} // namespace becpol
