#pragma once

// Command-line driver: orbit, oscillate and vdc subcommands.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "nilosc/oscillation.hpp"

namespace nilosc::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kNumeric = 3,
  kGridTooCoarse = 4,
};

inline constexpr const char* kPrecisionEnv = "NILOSC_PRECISION_BITS";

/// Parameters of a sequence family.  Scalars and lists are kept as the
/// user's text and parsed after the precision is configured.
struct SequenceSpec {
  std::string kind = "bracket";  // bracket | poly-phase | omega | extension | quasi-eigen | affine | random
  std::string alpha = "sqrt(2)";
  std::string beta = "sqrt(3)";
  std::string gamma = "0";
  std::string bracket;  // compact form; overrides alpha/beta when set
  std::string poly;     // coefficients c_0, c_1, ...
  std::string theta;    // quasi-eigen phases theta_0, ..., theta_{k-1}
  std::string fx = "0";
  long character = 1;   // m in e(m x)
  std::size_t tower = 2;
  std::uint64_t seed = 1;
};

nlohmann::ordered_json to_json(const SequenceSpec& s);

/// The first N terms of the sequence described by spec.
Sequence build_sequence(const SequenceSpec& spec, std::size_t N);

/// Runs the CLI on argv-style arguments (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nilosc::cli
