#ifndef RRSURF_REPORT_HPP
#define RRSURF_REPORT_HPP

// Check records and the JSON report: {config, checks, summary}.

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rrsurf/fixtures.hpp"

namespace rrsurf {

struct Check {
  std::string name;
  ordered_json inputs;
  ordered_json lhs, rhs;
  bool pass = false;
  std::int64_t micros = 0;
  std::string error;  // set when the computation itself failed
};

class Report {
 public:
  explicit Report(ordered_json config = ordered_json::object(), bool timing = false)
      : config_(std::move(config)), timing_(timing) {}

  /// Runs fn() -> (lhs, rhs) and records lhs == rhs; exceptions become failed checks.
  template <class Fn>
  const Check& run(std::string name, ordered_json inputs, Fn fn) {
    Check c{std::move(name), std::move(inputs), nullptr, nullptr, false, 0, {}};
    const auto t0 = std::chrono::steady_clock::now();
    try {
      auto [l, r] = fn();
      c.lhs = std::move(l);
      c.rhs = std::move(r);
      c.pass = c.lhs == c.rhs;
    } catch (const std::exception& e) {
      c.error = e.what();
    }
    if (timing_)
      c.micros = std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - t0).count();
    checks_.push_back(std::move(c));
    return checks_.back();
  }

  void add(Check c) { checks_.push_back(std::move(c)); }

  const std::vector<Check>& checks() const { return checks_; }
  std::size_t passed() const {
    std::size_t n = 0;
    for (const auto& c : checks_) n += c.pass;
    return n;
  }
  std::size_t failed() const { return checks_.size() - passed(); }
  const Check* first_failure() const {
    for (const auto& c : checks_)
      if (!c.pass) return &c;
    return nullptr;
  }

  ordered_json to_json() const {
    ordered_json j;
    j["config"] = config_;
    j["checks"] = ordered_json::array();
    for (const auto& c : checks_) {
      ordered_json e;
      e["name"] = c.name;
      e["inputs"] = c.inputs;
      e["lhs"] = c.lhs;
      e["rhs"] = c.rhs;
      e["pass"] = c.pass;
      e["micros"] = c.micros;
      if (!c.error.empty()) e["error"] = c.error;
      j["checks"].push_back(std::move(e));
    }
    j["summary"] = {{"passed", passed()}, {"failed", failed()}};
    return j;
  }

 private:
  ordered_json config_;
  bool timing_ = false;
  std::vector<Check> checks_;
};

inline std::string check_text(const Check& c) {
  std::string s = c.name + " " + c.inputs.dump() + ": lhs=" + c.lhs.dump() + " rhs=" + c.rhs.dump();
  if (!c.error.empty()) s += " error: " + c.error;
  return s;
}

}  // namespace rrsurf

#endif  // RRSURF_REPORT_HPP
