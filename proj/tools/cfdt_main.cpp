#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "cfdt/scenario.hpp"

namespace {

using cfdt::Json;

cfdt::Scenario load_scenario(const std::string& name_or_file) {
  const auto& names = cfdt::builtin_names();
  if (std::find(names.begin(), names.end(), name_or_file) != names.end())
    return cfdt::builtin(name_or_file);
  std::filesystem::path path(name_or_file);
  if (!std::filesystem::exists(path))
    throw std::invalid_argument("unknown scenario or missing file: " +
                                name_or_file);
  std::ifstream in(path);
  Json j = Json::parse(in);
  return cfdt::scenario_from_json(j);
}

std::string display_value(const Json& leaf, int decimal_digits) {
  std::string text = leaf.is_string() ? leaf.get<std::string>() : leaf.dump();
  if (decimal_digits > 0 && leaf.is_string()) {
    try {
      cfdt::Rat value = cfdt::parse_rational(leaf.get<std::string>());
      text += " (~" + cfdt::rat_to_decimal(value, decimal_digits) + ")";
    } catch (const std::invalid_argument&) {
    }
  }
  return text;
}

void print_table(const cfdt::RunResult& result, int decimal_digits) {
  Json body = result.report;
  Json checks;
  if (body.contains("checks")) {
    checks = body["checks"];
    body.erase("checks");
  }
  for (const auto& [key, leaf] : cfdt::flatten_report(body))
    std::cout << key << " = " << display_value(leaf, decimal_digits) << "\n";
  if (checks.is_array()) {
    for (const Json& check : checks) {
      std::cout << (check["pass"].get<bool>() ? "[PASS] " : "[FAIL] ")
                << check["key"].get<std::string>()
                << "  expected " << check["expected"].dump() << "  got "
                << check["actual"].dump() << "\n";
    }
    std::cout << result.checks_total - result.checks_failed << "/"
              << result.checks_total << " expected results matched\n";
  }
}

void print_csv(const cfdt::RunResult& result) {
  std::cout << "key,value\n";
  for (const auto& [key, leaf] : cfdt::flatten_report(result.report)) {
    std::string value = leaf.is_string() ? leaf.get<std::string>() : leaf.dump();
    std::string escaped;
    bool quote = value.find_first_of(",\"\n") != std::string::npos;
    for (char c : value) {
      if (c == '"') escaped += '"';
      escaped += c;
    }
    std::cout << key << ',' << (quote ? "\"" + escaped + "\"" : escaped) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact counterfactual decision toolkit"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "list builtin scenarios");

  auto* scenario_cmd = app.add_subcommand("scenario", "scenario operations");
  scenario_cmd->require_subcommand(1);
  auto* run_cmd = scenario_cmd->add_subcommand("run", "run a command on a scenario");
  std::string target;
  std::string command = "evaluate";
  std::string format = "table";
  std::string grid_step = "1/16";
  double lambda = 0;
  int decimal_digits = 0;
  run_cmd->add_option("scenario", target, "builtin name or scenario file")
      ->required();
  run_cmd->add_option("--command", command,
                      "evaluate|bounds|decompose|axioms|project|extend");
  run_cmd->add_option("--format", format, "table|json|csv")
      ->check(CLI::IsMember({"table", "json", "csv"}));
  run_cmd->add_option("--grid-step", grid_step, "verification grid step");
  run_cmd->add_option("--lambda", lambda, "rebuild 'bell' utilities with this lambda");
  run_cmd->add_option("--decimal", decimal_digits,
                      "also display rationals with this many decimals");

  CLI11_PARSE(app, argc, argv);

  try {
    if (list->parsed()) {
      for (const std::string& name : cfdt::builtin_names())
        std::cout << name << "\n";
      return 0;
    }
    cfdt::Scenario scenario = load_scenario(target);
    cfdt::RunOptions options;
    options.lambda = lambda;
    options.grid_step = cfdt::parse_rational(grid_step);
    options.decimal_digits = decimal_digits;
    cfdt::RunResult result = run(scenario, cfdt::parse_command(command), options);
    if (format == "json")
      std::cout << result.report.dump(2) << "\n";
    else if (format == "csv")
      print_csv(result);
    else
      print_table(result, decimal_digits);
    return result.passed() ? 0 : 1;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 2;
  }
}
