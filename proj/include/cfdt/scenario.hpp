#ifndef CFDT_SCENARIO_HPP
#define CFDT_SCENARIO_HPP

#include <map>
#include <string>

#include "cfdt/json_io.hpp"

namespace cfdt {

// A named bundle of states, utilities and policies plus a block of expected
// exact results used as golden checks. Items normally live on the scenario's
// primary space; individual items may carry their own.
struct Scenario {
  std::string name;
  ProblemSpace space;
  std::map<std::string, State> states;
  std::map<std::string, UtilityTable> utilities;
  std::map<std::string, Policy> policies;
  Json expected;  // flat map: dotted report key -> expected value
};

const std::vector<std::string>& builtin_names();
Scenario builtin(const std::string& name);

enum class Command { Evaluate, Bounds, Decompose, Axioms, Project, Extend };

Command parse_command(const std::string& name);
std::string command_name(Command command);

struct RunOptions {
  double lambda = 0;        // > 0 rebuilds utilities named "bell"
  Rat grid_step = Rat(1, 16);
  int decimal_digits = 0;   // display only
};

struct RunResult {
  Json report;
  int checks_total = 0;
  int checks_failed = 0;

  bool passed() const { return checks_failed == 0; }
};

// Dispatches the command, embeds the golden comparison under report["checks"],
// and counts failures. Throws std::invalid_argument for inapplicable commands
// or unresolved references.
RunResult run(const Scenario& scenario, Command command,
              const RunOptions& options = {});

Scenario scenario_from_json(const Json& j);
Json scenario_to_json(const Scenario& scenario);

// Leaves of a nested report as dotted keys (arrays stay whole).
std::map<std::string, Json> flatten_report(const Json& report);

}  // namespace cfdt

#endif
