#include "orbifold/report.hpp"

#include <algorithm>
#include <sstream>

namespace orbifold {

void CheckReport::record(const std::string& where, const std::string& lhs, const std::string& rhs, bool equal) {
  ++compared;
  if (equal) return;
  ++mismatch_count;
  if (mismatches.size() < kMaxStoredMismatches) mismatches.push_back({where, lhs, rhs});
}

bool CheckReport::as_expected() const {
  if (!error.empty()) return false;
  if (expect_fail) return compared > 0 && mismatch_count > 0;
  return passed();
}

void CheckReport::finalize() {
  if (error.empty() && compared == 0) error = "no coefficients compared";
}

std::string CheckReport::verdict() const {
  if (!error.empty()) return "error";
  if (compared == 0) return "fail";
  return mismatch_count == 0 ? "pass" : "fail";
}

nlohmann::ordered_json CheckReport::to_json() const {
  nlohmann::ordered_json j;
  j["name"] = name;
  j["k"] = k;
  j["window"] = window;
  j["compared"] = compared;
  j["mismatch_count"] = mismatch_count;
  auto& ms = j["mismatches"] = nlohmann::ordered_json::array();
  for (const auto& m : mismatches) ms.push_back({{"at", m.where}, {"lhs", m.lhs}, {"rhs", m.rhs}});
  j["verdict"] = verdict();
  j["expected"] = expect_fail ? "fail" : "pass";
  if (!error.empty()) j["error"] = error;
  return j;
}

std::string render_table(const std::vector<CheckReport>& reports) {
  size_t w = 5;
  for (const auto& r : reports) w = std::max(w, r.name.size());
  std::ostringstream os;
  os << std::string(w - 5, ' ') << "check" << "  k  compared  mismatches  expected  verdict\n";
  for (const auto& r : reports) {
    os << std::string(w - r.name.size(), ' ') << r.name << "  " << r.k << "  ";
    std::string c = std::to_string(r.compared), m = std::to_string(r.mismatch_count);
    os << std::string(c.size() < 8 ? 8 - c.size() : 0, ' ') << c << "  ";
    os << std::string(m.size() < 10 ? 10 - m.size() : 0, ' ') << m << "  ";
    os << (r.expect_fail ? "    fail" : "    pass") << "  " << r.verdict();
    if (!r.error.empty()) os << " (" << r.error << ")";
    os << "\n";
  }
  return os.str();
}

nlohmann::ordered_json render_json(const std::vector<CheckReport>& reports) {
  nlohmann::ordered_json out;
  auto& arr = out["checks"] = nlohmann::ordered_json::array();
  bool ok = true;
  for (const auto& r : reports) {
    arr.push_back(r.to_json());
    ok = ok && r.as_expected();
  }
  out["all_as_expected"] = ok;
  return out;
}

}  // namespace orbifold
