#pragma once

#include <string>

#include "cpsres.h"

namespace cli {

// All fields are kept as the text the user supplied; empty means unset.
// Validation happens after file values and flag overrides are merged.
struct RunConfig {
  std::string command;
  std::string a;
  std::string p;
  std::string pmp;
  std::string pmc;
  std::string pmi;
  std::string lambda;
  std::string rho;
  std::string epsilon;
  std::string delay_slots;
  std::string n_cyber;
  std::string trials;
  std::string seed;
  std::string resolution;
  std::string max_iters;
  std::string out;
  // config-file-only keys
  std::string axis;
  std::string values;
  std::string degrees;
  std::string grid_step;
  std::string heal_tol;
  std::string trials_out;
  std::string graph_out;
  std::string relink;

  bool operator==(const RunConfig&) const = default;
};

struct ConfigError {
  enum class Kind { unknown_key, parse, validation };
  Kind kind;
  std::string message;
};

// Parses `key = value` lines; `#` starts a comment. Throws ConfigError
// with the offending line number or key name.
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

// Serializes every set field as `key = value`, one per line, in a fixed
// order, so parse(dump(c)) == c.
std::string dump_config(const RunConfig& config);

// Field-level checks on whatever is set: numbers parse and sit in range,
// distribution literals build. Throws ConfigError naming the field.
void validate_config(const RunConfig& config);

// Builds a distribution from a literal. Besides the library grammar this
// accepts er(mean,kmin,kmax) and sf(gamma,kmin,nnodes) builder forms.
cpsres_status make_dist(const std::string& literal, cpsres_dist** out);

}  // namespace cli
