#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "anacat/ambient.hpp"

namespace anacat {

using json = nlohmann::ordered_json;

enum class Status { pass, fail, skipped };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skipped: return "skipped";
  }
  return "unknown";
}

/// Outcome of one law check. Only the first failure keeps its witness; later
/// failures are counted.
struct VerificationReport {
  std::string law;
  Status status = Status::pass;
  std::size_t instances = 0;
  std::size_t failures = 0;
  std::size_t bound = 0;
  std::string detail;
  json witness;
  std::map<std::string, std::size_t> counters;  // named sub-counts

  VerificationReport() = default;
  VerificationReport(std::string law_id, std::size_t size_bound) : law(std::move(law_id)), bound(size_bound) {}

  bool passed() const { return status == Status::pass; }
  bool failed() const { return status == Status::fail; }

  void count(std::size_t n = 1) { instances += n; }

  void fail(const std::string& why, json w = json::object()) {
    ++failures;
    if (status == Status::fail) return;
    status = Status::fail;
    detail = why;
    witness = std::move(w);
  }

  /// Records a check; returns `ok` so callers can short-circuit.
  bool expect(bool ok, const std::string& why, json w = json::object()) {
    ++instances;
    if (!ok) fail(why, std::move(w));
    return ok;
  }

  /// As expect, but the witness is only built on failure.
  template <class MakeWitness>
  bool check(bool ok, const char* why, MakeWitness&& make) {
    ++instances;
    if (!ok) fail(why, make());
    return ok;
  }

  void skip(const std::string& why) {
    if (status == Status::fail) return;
    status = Status::skipped;
    detail = why;
  }

  /// Folds a sub-report into this one under a combined instance count.
  void absorb(const VerificationReport& r) {
    instances += r.instances;
    if (r.status == Status::fail) {
      failures += r.failures > 0 ? r.failures - 1 : 0;
      fail(r.law + ": " + r.detail, r.witness);
    }
  }

  json to_json() const {
    json j;
    j["law"] = law;
    j["status"] = to_string(status);
    j["instances"] = instances;
    j["failures"] = failures;
    j["bound"] = bound;
    if (!detail.empty()) j["detail"] = detail;
    if (!counters.empty()) j["counters"] = counters;
    if (status == Status::fail) j["witness"] = witness;
    return j;
  }

  std::string to_text() const {
    std::string line = std::string(to_string(status)) + "  " + law + "  instances=" + std::to_string(instances) +
                       " bound=" + std::to_string(bound);
    if (failures > 0) line += " failures=" + std::to_string(failures);
    if (!detail.empty()) line += "  (" + detail + ")";
    return line;
  }
};

template <class O>
json arrow_json(const Arrow<O>& f) {
  return json{{"dom", f.dom.size()}, {"cod", f.cod.size()}, {"table", f.table}};
}

}  // namespace anacat
