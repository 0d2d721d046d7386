#pragma once

// Named checks: every entry of a scenario's check list dispatches here. Each
// check id maps to exactly one library operation and carries the anchor tag
// of the statement it verifies. Execution is pure: a check builds everything
// it needs from its arguments, so independent checks can run concurrently.

#include <string>
#include <vector>

#include "zalg/scenario.hpp"

namespace zalg {

constexpr const char* kToolVersion = "0.1.0";

enum class CheckStatus { pass, fail, error };

const char* to_string(CheckStatus s);

struct CheckOutcome {
  std::string id;
  CheckStatus status = CheckStatus::error;
  json details;  // string or structured witness data
  long ms = 0;   // filled by the driver when timing is requested
};

struct CheckInfo {
  std::string id;
  std::string args;    // one-line argument schema
  std::string anchor;  // statement tag the check verifies
};

// registry in stable listing order
const std::vector<CheckInfo>& check_catalog();

// Runs one check entry against the scenario it came from. index is the
// position in the check list and salts the per-check random stream; top is
// the effective truncation degree. Library errors come back as status
// error, never as exceptions.
CheckOutcome run_check(const Scenario& sc, const json& entry, int index,
                       int top, std::uint64_t seed);

}  // namespace zalg
