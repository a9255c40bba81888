#pragma once

#include <string>
#include <string_view>

#include "satolab/characters.hpp"
#include "satolab/clt.hpp"
#include "satolab/root_system.hpp"

namespace satolab {

/// Root system data as JSON: roots, rho, fundamental weights, |W| and the
/// sign of every enumerated Weyl element. Weights use doubled coordinates.
std::string root_system_json(const RootSystem& rs);

/// [{"weight": [doubled ints], "coeff": c}, ...] in weight order.
std::string expansion_to_json(const CharExpansion& e);
/// Inverse of expansion_to_json; throws ValidationError on malformed input.
CharExpansion expansion_from_json(std::string_view text);

/// CLT report as JSON with a fixed key order. The runtime is left out so
/// that reruns produce identical bytes.
std::string clt_report_json(const CLTReport& r);

/// RFC 4180 quoting when the field needs it.
std::string csv_field(std::string_view s);
/// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

}  // namespace satolab
