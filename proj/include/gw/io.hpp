#pragma once

#include <string>
#include <vector>

#include "gw/grunwald.hpp"
#include "gw/powres.hpp"
#include "gw/wang.hpp"

namespace gw {

/// JSON instance: {"m": 8, "field": "Q", "places": [{"place": "2",
/// "conductor_exponent": 0, "unit_exponents": [], "uniformizer_exponent": 1,
/// "sign_exponent": 0}, ...]}. Only "m" and each "place" are required; unknown
/// keys are rejected. Throws ValidationError naming the offending key.
GrunwaldInstance parse_instance(const std::string& text);
GrunwaldInstance load_instance(const std::string& path);
std::string instance_to_json(const GrunwaldInstance& instance);

/// Comma-separated places ("2,5,infinity"); empty text is the empty set.
std::vector<Place> parse_place_list(const std::string& text);
std::vector<u64> parse_u64_list(const std::string& text);
std::string join(const std::vector<u64>& values, const char* sep = ",");
std::string join(const std::vector<Place>& places);

// Deterministic key=value records, one per line.
std::string format_solution(const GrunwaldSolution& solution);
std::string format_report(const BoundReport& report);
std::string format_special_case(const SpecialCaseReport& report, const FieldDescriptor& K);
std::string format_powres(const PowerResidueAnswer& answer);

}  // namespace gw
