#pragma once

#include <string>
#include <vector>

namespace pt {

struct LawFailure {
  std::string law;
  std::string inputs;  // serialized witnesses, enough to replay offline
  std::string lhs, rhs;
  double deviation = 0.0;
};

// Result of one sampled check; pass iff failures is empty.
struct LawReport {
  std::string check;
  int samples = 0;
  std::vector<LawFailure> failures;
  double elapsed_ms = 0.0;
  std::vector<std::string> notes;

  bool pass() const { return failures.empty(); }
  void fail(std::string law, std::string inputs, std::string lhs,
            std::string rhs, double dev = 0.0) {
    failures.push_back(
        {std::move(law), std::move(inputs), std::move(lhs), std::move(rhs), dev});
  }
  std::string summary() const {
    return check + ": " + std::to_string(samples) + " samples, " +
           std::to_string(failures.size()) + " failures" +
           (pass() ? " (pass)" : " (FAIL)");
  }
};

struct LawSuite {
  std::string backend;
  std::vector<LawReport> reports;
  bool pass() const {
    for (const auto& r : reports)
      if (!r.pass()) return false;
    return true;
  }
};

}  // namespace pt
