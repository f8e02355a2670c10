#include "config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace cli {
namespace {

std::string trim(const std::string& text) {
  const auto begin = text.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = text.find_last_not_of(" \t\r");
  return text.substr(begin, end - begin + 1);
}

[[noreturn]] void fail(ConfigError::Kind kind, std::string message) {
  throw ConfigError{kind, std::move(message)};
}

std::string* field_for(RunConfig& config, const std::string& key) {
  static const struct {
    const char* key;
    std::string RunConfig::* member;
  } kTable[] = {
      {"command", &RunConfig::command},
      {"a", &RunConfig::a},
      {"p", &RunConfig::p},
      {"pmp", &RunConfig::pmp},
      {"pmc", &RunConfig::pmc},
      {"pmi", &RunConfig::pmi},
      {"lambda", &RunConfig::lambda},
      {"rho", &RunConfig::rho},
      {"epsilon", &RunConfig::epsilon},
      {"delay_slots", &RunConfig::delay_slots},
      {"n_cyber", &RunConfig::n_cyber},
      {"trials", &RunConfig::trials},
      {"seed", &RunConfig::seed},
      {"resolution", &RunConfig::resolution},
      {"max_iters", &RunConfig::max_iters},
      {"out", &RunConfig::out},
      {"axis", &RunConfig::axis},
      {"values", &RunConfig::values},
      {"degrees", &RunConfig::degrees},
      {"grid_step", &RunConfig::grid_step},
      {"heal_tol", &RunConfig::heal_tol},
      {"trials_out", &RunConfig::trials_out},
      {"graph_out", &RunConfig::graph_out},
      {"relink", &RunConfig::relink},
  };
  for (const auto& row : kTable)
    if (key == row.key) return &(config.*row.member);
  return nullptr;
}

bool parse_double(const std::string& text, double* out) {
  const char* begin = text.c_str();
  char* end = nullptr;
  *out = std::strtod(begin, &end);
  return end != begin && *end == '\0';
}

bool parse_long(const std::string& text, long* out) {
  const char* begin = text.c_str();
  char* end = nullptr;
  *out = std::strtol(begin, &end, 10);
  return end != begin && *end == '\0';
}

[[noreturn]] void bad_field(const std::string& name, const std::string& value,
                            const std::string& why) {
  fail(ConfigError::Kind::validation, name + ": " + why + " (got '" + value +
                                          "')");
}

void check_unit_interval(const std::string& name, const std::string& value) {
  double parsed = 0.0;
  if (!parse_double(value, &parsed))
    bad_field(name, value, "expected a number");
  if (!(parsed >= 0.0 && parsed <= 1.0))
    bad_field(name, value, "must lie in [0,1]");
}

void check_integer_min(const std::string& name, const std::string& value,
                       long minimum) {
  long parsed = 0;
  if (!parse_long(value, &parsed))
    bad_field(name, value, "expected an integer");
  if (parsed < minimum)
    bad_field(name, value, "must be at least " + std::to_string(minimum));
}

void check_dist(const std::string& name, const std::string& value) {
  cpsres_dist* dist = nullptr;
  const cpsres_status status = make_dist(value, &dist);
  if (status != CPSRES_OK)
    bad_field(name, value, std::string(cpsres_status_name(status)) + ": " +
                               cpsres_last_error());
  cpsres_dist_free(dist);
}

bool parse_builder_args(const std::string& inner, double* first, long* second,
                        long* third) {
  std::vector<std::string> parts;
  std::stringstream stream(inner);
  std::string piece;
  while (std::getline(stream, piece, ',')) parts.push_back(trim(piece));
  if (parts.size() != 3) return false;
  return parse_double(parts[0], first) && parse_long(parts[1], second) &&
         parse_long(parts[2], third);
}

}  // namespace

cpsres_status make_dist(const std::string& literal, cpsres_dist** out) {
  const std::string text = trim(literal);
  const bool er = text.rfind("er(", 0) == 0;
  const bool sf = text.rfind("sf(", 0) == 0;
  if ((er || sf) && text.back() == ')') {
    double first = 0.0;
    long second = 0;
    long third = 0;
    if (!parse_builder_args(text.substr(3, text.size() - 4), &first, &second,
                            &third))
      return cpsres_dist_parse(text.c_str(), out);  // let it report
    if (er)
      return cpsres_dist_er_truncated(first, static_cast<int>(second),
                                      static_cast<int>(third), out);
    return cpsres_dist_scale_free(first, static_cast<int>(second),
                                  static_cast<int>(third), out);
  }
  return cpsres_dist_parse(text.c_str(), out);
}

RunConfig parse_config_text(const std::string& text) {
  RunConfig config;
  std::stringstream stream(text);
  std::string line;
  int line_number = 0;
  while (std::getline(stream, line)) {
    ++line_number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      fail(ConfigError::Kind::parse,
           "line " + std::to_string(line_number) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      fail(ConfigError::Kind::parse,
           "line " + std::to_string(line_number) + ": empty key or value");
    std::string* field = field_for(config, key);
    if (field == nullptr)
      fail(ConfigError::Kind::unknown_key, "unknown key '" + key + "' on line " +
                                               std::to_string(line_number));
    *field = value;
  }
  return config;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    fail(ConfigError::Kind::parse, "cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

std::string dump_config(const RunConfig& config) {
  const struct {
    const char* key;
    const std::string RunConfig::* member;
  } kOrder[] = {
      {"command", &RunConfig::command},
      {"a", &RunConfig::a},
      {"p", &RunConfig::p},
      {"pmp", &RunConfig::pmp},
      {"pmc", &RunConfig::pmc},
      {"pmi", &RunConfig::pmi},
      {"lambda", &RunConfig::lambda},
      {"rho", &RunConfig::rho},
      {"epsilon", &RunConfig::epsilon},
      {"delay_slots", &RunConfig::delay_slots},
      {"n_cyber", &RunConfig::n_cyber},
      {"trials", &RunConfig::trials},
      {"seed", &RunConfig::seed},
      {"resolution", &RunConfig::resolution},
      {"max_iters", &RunConfig::max_iters},
      {"out", &RunConfig::out},
      {"axis", &RunConfig::axis},
      {"values", &RunConfig::values},
      {"degrees", &RunConfig::degrees},
      {"grid_step", &RunConfig::grid_step},
      {"heal_tol", &RunConfig::heal_tol},
      {"trials_out", &RunConfig::trials_out},
      {"graph_out", &RunConfig::graph_out},
      {"relink", &RunConfig::relink},
  };
  std::string text;
  for (const auto& row : kOrder) {
    const std::string& value = config.*row.member;
    if (value.empty()) continue;
    text += row.key;
    text += " = ";
    text += value;
    text += '\n';
  }
  return text;
}

void validate_config(const RunConfig& config) {
  static const char* kCommands[] = {"bound", "de", "one2one", "threshold",
                                    "sweep", "optimize", "delay", "simulate"};
  if (!config.command.empty()) {
    bool known = false;
    for (const char* name : kCommands) known = known || config.command == name;
    if (!known)
      bad_field("command", config.command,
                "expected one of bound, de, one2one, threshold, sweep, "
                "optimize, delay, simulate");
  }
  if (!config.a.empty()) check_integer_min("a", config.a, 1);
  if (!config.p.empty()) check_unit_interval("p", config.p);
  if (!config.pmp.empty()) check_unit_interval("pmp", config.pmp);
  if (!config.pmc.empty()) check_unit_interval("pmc", config.pmc);
  if (!config.pmi.empty()) check_unit_interval("pmi", config.pmi);
  if (!config.epsilon.empty()) check_unit_interval("epsilon", config.epsilon);
  if (!config.lambda.empty()) check_dist("lambda", config.lambda);
  if (!config.rho.empty()) check_dist("rho", config.rho);
  if (!config.delay_slots.empty())
    check_integer_min("delay_slots", config.delay_slots, 0);
  if (!config.n_cyber.empty()) check_integer_min("n_cyber", config.n_cyber, 2);
  if (!config.trials.empty()) check_integer_min("trials", config.trials, 1);
  if (!config.seed.empty()) check_integer_min("seed", config.seed, 0);
  if (!config.max_iters.empty())
    check_integer_min("max_iters", config.max_iters, 1);
  if (!config.resolution.empty()) {
    double parsed = 0.0;
    if (!parse_double(config.resolution, &parsed))
      bad_field("resolution", config.resolution, "expected a number");
    if (!(parsed > 0.0 && parsed < 1.0))
      bad_field("resolution", config.resolution, "must lie in (0,1)");
  }
  if (!config.grid_step.empty()) {
    double parsed = 0.0;
    if (!parse_double(config.grid_step, &parsed))
      bad_field("grid_step", config.grid_step, "expected a number");
    if (!(parsed > 0.0 && parsed <= 1.0))
      bad_field("grid_step", config.grid_step, "must lie in (0,1]");
  }
  if (!config.heal_tol.empty()) {
    double parsed = 0.0;
    if (!parse_double(config.heal_tol, &parsed))
      bad_field("heal_tol", config.heal_tol, "expected a number");
    if (!(parsed > 0.0))
      bad_field("heal_tol", config.heal_tol, "must be positive");
  }
  if (!config.degrees.empty()) {
    std::stringstream stream(config.degrees);
    std::string piece;
    bool any = false;
    while (std::getline(stream, piece, ',')) {
      long parsed = 0;
      if (!parse_long(trim(piece), &parsed))
        bad_field("degrees", config.degrees,
                  "expected comma-separated integers");
      any = true;
    }
    if (!any)
      bad_field("degrees", config.degrees, "expected comma-separated integers");
  }
  if (!config.relink.empty() && config.relink != "on" &&
      config.relink != "off")
    bad_field("relink", config.relink, "expected on or off");
  if (!config.values.empty() && trim(config.values).empty())
    bad_field("values", config.values, "expected a nonempty list");
}

}  // namespace cli
