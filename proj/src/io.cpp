#include "gw/io.hpp"

#include <charconv>
#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "gw/errors.hpp"

namespace gw {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& known, const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    if (!known.count(key)) throw ValidationError(where + "." + key + ": unknown key");
  }
}

u64 get_u64(const json& obj, const std::string& key, const std::string& where, u64 fallback, bool required) {
  if (!obj.contains(key)) {
    if (required) throw ValidationError(where + "." + key + ": missing");
    return fallback;
  }
  const auto& v = obj.at(key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<i64>() >= 0))
    throw ValidationError(where + "." + key + ": expected a nonnegative integer");
  return v.get<u64>();
}

std::string fixed(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

}  // namespace

GrunwaldInstance parse_instance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("instance: not valid JSON (") + e.what() + ")");
  }
  if (!doc.is_object()) throw ValidationError("instance: expected a JSON object");
  reject_unknown(doc, {"m", "field", "places"}, "instance");

  GrunwaldInstance inst;
  inst.m = get_u64(doc, "m", "instance", 0, true);
  if (doc.contains("field")) {
    if (!doc["field"].is_string()) throw ValidationError("instance.field: expected a string");
    try {
      inst.field = parse_field(doc["field"].get<std::string>());
    } catch (const DomainError& e) {
      throw ValidationError(std::string("instance.field: ") + e.what());
    }
  }
  if (doc.contains("places")) {
    if (!doc["places"].is_array()) throw ValidationError("instance.places: expected an array");
    std::size_t i = 0;
    for (const auto& rec : doc["places"]) {
      const std::string where = "places[" + std::to_string(i++) + "]";
      if (!rec.is_object()) throw ValidationError(where + ": expected an object");
      reject_unknown(rec, {"place", "conductor_exponent", "unit_exponents", "uniformizer_exponent", "sign_exponent"},
                     where);
      if (!rec.contains("place") || !rec["place"].is_string())
        throw ValidationError(where + ".place: expected a string (a prime or \"infinity\")");
      LocalCharacter chi;
      try {
        chi.place = parse_place(rec["place"].get<std::string>());
      } catch (const DomainError& e) {
        throw ValidationError(where + ".place: " + e.what());
      }
      chi.exponent_modulus = inst.m;
      chi.conductor_exponent = static_cast<int>(get_u64(rec, "conductor_exponent", where, 0, false));
      chi.uniformizer_exponent = get_u64(rec, "uniformizer_exponent", where, 0, false);
      chi.sign_exponent = get_u64(rec, "sign_exponent", where, 0, false);
      if (rec.contains("unit_exponents")) {
        if (!rec["unit_exponents"].is_array()) throw ValidationError(where + ".unit_exponents: expected an array");
        for (const auto& e : rec["unit_exponents"]) {
          if (!e.is_number_integer() || e.get<i64>() < 0)
            throw ValidationError(where + ".unit_exponents: expected nonnegative integers");
          chi.unit_exponents.push_back(e.get<u64>());
        }
      }
      if (chi.place.is_real()) {
        if (chi.conductor_exponent != 0 && static_cast<u64>(chi.conductor_exponent) != chi.sign_exponent)
          throw ValidationError(where + ".conductor_exponent: must equal sign_exponent at infinity");
        chi.conductor_exponent = static_cast<int>(chi.sign_exponent);
      }
      inst.places.push_back(std::move(chi));
    }
  }
  inst.validate();
  return inst;
}

GrunwaldInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("instance: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

std::string instance_to_json(const GrunwaldInstance& instance) {
  json doc;
  doc["m"] = instance.m;
  doc["field"] = instance.field.to_string();
  doc["places"] = json::array();
  for (const auto& chi : instance.places) {
    doc["places"].push_back({{"place", chi.place.to_string()},
                             {"conductor_exponent", chi.conductor_exponent},
                             {"unit_exponents", chi.unit_exponents},
                             {"uniformizer_exponent", chi.uniformizer_exponent},
                             {"sign_exponent", chi.sign_exponent}});
  }
  return doc.dump(2);
}

std::vector<Place> parse_place_list(const std::string& text) {
  std::vector<Place> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const Place v = parse_place(item);
    if (std::find(out.begin(), out.end(), v) != out.end()) throw DomainError("place " + item + " listed twice");
    out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<u64> parse_u64_list(const std::string& text) {
  std::vector<u64> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    u64 v = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || ptr != item.data() + item.size())
      throw DomainError("'" + item + "' is not a nonnegative integer");
    out.push_back(v);
  }
  return out;
}

std::string join(const std::vector<u64>& values, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? sep : "") + std::to_string(values[i]);
  return out;
}

std::string join(const std::vector<Place>& places) {
  std::string out;
  for (std::size_t i = 0; i < places.size(); ++i) out += (i ? "," : "") + places[i].to_string();
  return out;
}

std::string format_solution(const GrunwaldSolution& s) {
  std::ostringstream out;
  out << "character.modulus=" << s.character.modulus() << '\n'
      << "character.exponent_modulus=" << s.character.exponent_modulus() << '\n'
      << "character.exponents=" << join(s.character.exponents()) << '\n'
      << "character.order=" << s.character.order() << '\n'
      << "conductor=" << s.character.conductor().to_string() << '\n'
      << "exponent_achieved=" << s.exponent_achieved << '\n'
      << "special_case=" << (s.special_case_flag ? "true" : "false") << '\n'
      << "aux_primes=" << join(s.aux_primes) << '\n'
      << "cycle=" << s.cycle.to_string() << '\n';
  return out.str();
}

std::string format_report(const BoundReport& r) {
  std::ostringstream out;
  out << "e=" << r.e << '\n'
      << "D=" << r.D << '\n'
      << "delta=" << r.delta << '\n'
      << "delta_prime=" << r.delta_prime << '\n'
      << "E1=" << r.E1 << '\n'
      << "selmer_rank=" << r.selmer_rank << '\n'
      << "bound_TM1_shape=" << fixed(r.bound_TM1_shape) << '\n'
      << "bound_TM2_exponent=" << fixed(r.bound_TM2_exponent) << '\n'
      << "bound_TM2_log_shape=" << fixed(r.bound_TM2_log_shape) << '\n'
      << "bound_TM3_log_shape=" << fixed(r.bound_TM3_log_shape) << '\n'
      << "achieved_log_conductor=" << fixed(r.achieved_log_conductor) << '\n'
      << "tm1_ratio=" << fixed(r.tm1_ratio) << '\n'
      << "BPI=" << r.bpi << '\n'
      << "BPV=" << r.bpv << '\n';
  return out.str();
}

std::string format_special_case(const SpecialCaseReport& r, const FieldDescriptor& K) {
  std::ostringstream out;
  out << "occurs=" << (r.occurs ? "true" : "false") << " s=" << r.s;
  if (r.a0) out << " a0=" << to_string(*r.a0, K.d);
  out << " S0=" << (r.S0.empty() ? "none" : join(r.S0));
  if (!r.occurs) out << " failed_condition=" << r.failed_condition;
  out << '\n';
  return out.str();
}

std::string format_powres(const PowerResidueAnswer& a) {
  std::ostringstream out;
  out << "N=" << a.modulus << " phi=" << a.certificate.phi << " lth_power_subgroup=" << a.certificate.lth_power_subgroup
      << " p_dlog=" << join(a.certificate.p_dlog) << " witness_generator=" << a.certificate.witness_generator << '\n';
  return out.str();
}

}  // namespace gw
