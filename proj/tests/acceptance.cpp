// Acceptance driver: one PASS/FAIL line per criterion. Criteria 1-9 are the
// randomized batteries at their default batch sizes, each with a wall-clock
// budget; criterion 10 replays the frozen worked examples.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <string>

#include "charp/crosscheck.hpp"
#include "fixture_cases.hpp"

#ifndef CHARP_FIXTURE_FILE
#error "CHARP_FIXTURE_FILE must point at derived_examples.json"
#endif

namespace {

constexpr std::uint64_t kSeed = 20240601;

struct Budget {
  const char* battery;
  double seconds;
};

constexpr Budget kBudgets[] = {
    {"cartier-identities", 60}, {"oracle-1var", 30},        {"gm-equivalence", 60},
    {"ga-equivalence", 60},     {"abelian-formula", 90},    {"aff1-classifier", 120},
    {"boundary-roundtrip", 30}, {"cocycle", 10},            {"flatness", 30},
};

bool report(int criterion, bool ok, const std::string& summary) {
  std::printf("criterion %2d: %s  %s\n", criterion, ok ? "PASS" : "FAIL", summary.c_str());
  std::fflush(stdout);
  return ok;
}

}  // namespace

int main() {
  bool all = true;
  int criterion = 0;
  for (const auto& budget : kBudgets) {
    ++criterion;
    const auto r = charp::run_battery(budget.battery, kSeed);
    const bool in_time = r.seconds < budget.seconds;
    char line[256];
    std::snprintf(line, sizeof line, "%s: %zu trials, %zu failures, %zu skipped, %.2fs (limit %.0fs)", budget.battery,
                  r.trials, r.failures, r.skipped, r.seconds, budget.seconds);
    std::string summary = line;
    if (!r.note.empty()) summary += "; " + r.note;
    for (const auto& s : r.samples) summary += "\n    " + s;
    all &= report(criterion, r.passed() && in_time, summary);
  }

  const auto start = std::chrono::steady_clock::now();
  std::size_t failed = 0, total = 0;
  std::string details;
  try {
    for (const auto& o : charp::testing::run_fixture_file(CHARP_FIXTURE_FILE)) {
      ++total;
      if (!o.ok) {
        ++failed;
        details += "\n    " + o.id + ": " + o.detail;
      }
    }
  } catch (const std::exception& e) {
    ++failed;
    details += std::string("\n    ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  all &= report(10, failed == 0 && total > 0,
                "worked examples: " + std::to_string(total - std::min(failed, total)) + "/" + std::to_string(total) +
                    " match the frozen fixtures, " + std::to_string(secs).substr(0, 4) + "s" + details);
  return all ? 0 : 1;
}
