#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "gw/errors.hpp"
#include "gw/io.hpp"
#include "gw/mult_one.hpp"
#include "gw/powres.hpp"

using namespace gw;

namespace {

int exit_code(const Error& e) {
  const auto& k = e.kind();
  if (k == "search-cap" || k == "not-found-below-cap") return 3;
  if (k == "internal-contradiction") return 4;
  return 2;
}

Execution execution(bool serial) { return serial ? Execution::serial : Execution::parallel; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grunwald-Wang toolkit over Q"};
  app.require_subcommand(1);

  std::string instance_path, method = "constructive";
  u64 cap = 100'000;
  bool serial = false;
  auto* construct_cmd = app.add_subcommand("construct", "Global character with prescribed local components");
  construct_cmd->add_option("--instance", instance_path, "Instance file (JSON)")->required();
  construct_cmd->add_option("--method", method, "constructive or oracle")
      ->check(CLI::IsMember({"constructive", "oracle"}));
  construct_cmd->add_option("--cap", cap, "Oracle conductor cap");
  construct_cmd->add_flag("--serial", serial, "Use the serial oracle");

  std::string field = "Q", S_text;
  u64 m = 0;
  auto* special_cmd = app.add_subcommand("special-case", "Detect the special case of Wang");
  special_cmd->add_option("--field", field, "Q or Qsqrt:d");
  special_cmd->add_option("--m", m, "Exponent m")->required();
  special_cmd->add_option("--S", S_text, "Places, comma-separated (e.g. 2,infinity)");

  u64 modulus = 0, exponent_modulus = 0;
  std::string exps_text, exclude_text;
  auto* least_cmd = app.add_subcommand("least-prime", "Least unramified prime outside S where chi != 1");
  least_cmd->add_option("--modulus", modulus, "Modulus N")->required();
  least_cmd->add_option("--exponents", exps_text, "Exponents on the canonical generators mod N")->required();
  least_cmd->add_option("--exponent-modulus", exponent_modulus, "Exponent modulus (default lambda(N))");
  least_cmd->add_option("--exclude", exclude_text, "Places of S, comma-separated");

  u64 max_conductor = 0, scan_cap = 100'000'000;
  double epsilon = 0.1;
  std::string out_path;
  auto* scan_cmd = app.add_subcommand("scan", "Least-prime scan over all primitive characters");
  scan_cmd->add_option("--max-conductor", max_conductor, "Largest conductor")->required();
  scan_cmd->add_option("--S", S_text, "Places of S, comma-separated");
  scan_cmd->add_option("--epsilon", epsilon, "Epsilon for ratio_B");
  scan_cmd->add_option("--out", out_path, "CSV output file")->required();
  scan_cmd->add_option("--cap", scan_cap, "Prime search cap per character");
  scan_cmd->add_flag("--serial", serial, "Use the serial scan");

  u64 p = 0, l = 0;
  int r = 0;
  auto* powres_cmd = app.add_subcommand("powres", "Least N with p not an l-th power mod N");
  powres_cmd->add_option("--p", p, "Prime p")->required();
  powres_cmd->add_option("--l", l, "Prime l")->required();
  powres_cmd->add_option("--r", r, "Also require l^r | phi(N)");

  bool refine = false;
  auto* report_cmd = app.add_subcommand("report", "Bound quantities for the constructed character");
  report_cmd->add_option("--instance", instance_path, "Instance file (JSON)")->required();
  report_cmd->add_option("--epsilon", epsilon, "Epsilon");
  report_cmd->add_flag("--delta-refinement", refine, "delta = 0 when l is not in S");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: usage: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*construct_cmd) {
      const auto inst = load_instance(instance_path);
      const auto sol = method == "oracle" ? oracle_minimal(inst, cap, execution(serial)) : construct(inst);
      std::cout << "method=" << method << '\n' << format_solution(sol);
    } else if (*special_cmd) {
      const auto K = parse_field(field);
      std::cout << format_special_case(special_case(K, m, parse_place_list(S_text)), K);
    } else if (*least_cmd) {
      const auto G = unit_group(modulus);
      const auto chi = make_dirichlet(modulus, parse_u64_list(exps_text),
                                      exponent_modulus ? exponent_modulus : std::max<u64>(G.exponent(), 1));
      const auto S = parse_place_list(exclude_text);
      const auto w = least_nonsplit_prime(chi, S);
      std::cout << "least_prime=" << w.prime << " value_exponent=" << w.value_exponent
                << " exponent_modulus=" << chi.exponent_modulus() << " conductor=" << chi.conductor().norm()
                << " A=" << analytic_conductor_S(chi, S) << '\n';
    } else if (*scan_cmd) {
      const auto S = parse_place_list(S_text);
      const auto records = scan_family(max_conductor, S, epsilon, scan_cap, execution(serial));
      std::ofstream out(out_path);
      if (!out) throw ValidationError("--out: cannot write " + out_path);
      write_scan_csv(out, records);
      const auto s = summarize_scan(records, max_conductor);
      std::cout << "records=" << s.records << " capped=" << s.capped << " max_ratio_A=" << s.max_ratio_A
                << " max_ratio_B=" << s.max_ratio_B << " max_ratio_C=" << s.max_ratio_C
                << " argmax_ratio_C=" << s.argmax_ratio_C << '\n';
    } else if (*powres_cmd) {
      const auto ans = least_non_lth_power_modulus(p, l, r > 0 ? std::optional<int>(r) : std::nullopt);
      std::cout << format_powres(ans);
    } else if (*report_cmd) {
      const auto inst = load_instance(instance_path);
      const auto sol = construct(inst);
      std::cout << format_solution(sol) << format_report(bound_report(inst, sol, epsilon, refine));
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.kind() << ": " << e.what() << '\n';
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << '\n';
    return 4;
  }
  return 0;
}
