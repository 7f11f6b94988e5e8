#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace orbifold {

struct Mismatch {
  std::string where;  // exponent tuple and basis labels
  std::string lhs, rhs;
};

// verdict pass iff something was compared and nothing disagreed
struct CheckReport {
  std::string name;
  int k = 0;
  nlohmann::ordered_json window = nlohmann::ordered_json::object();
  long compared = 0;
  std::vector<Mismatch> mismatches;
  bool expect_fail = false;
  std::string error;  // set when the check could not run

  static constexpr size_t kMaxStoredMismatches = 20;
  long mismatch_count = 0;

  void record(const std::string& where, const std::string& lhs, const std::string& rhs, bool equal);
  bool passed() const { return error.empty() && compared > 0 && mismatch_count == 0; }
  // Outcome agrees with expectation (expected failures must fail with data, not errors).
  bool as_expected() const;
  std::string verdict() const;
  // Turns a vacuous comparison into an explicit error.
  void finalize();
  nlohmann::ordered_json to_json() const;
};

std::string render_table(const std::vector<CheckReport>& reports);
nlohmann::ordered_json render_json(const std::vector<CheckReport>& reports);

}  // namespace orbifold
