#ifndef DAGFIX_REPORT_HPP
#define DAGFIX_REPORT_HPP

#include <chrono>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace dagfix {

struct Violation {
  std::string law;
  std::string witness;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Outcome of one law suite. Only the first kMaxStored violations keep a witness.
struct LawReport {
  static constexpr std::size_t kMaxStored = 64;

  std::string suite;
  std::size_t checked = 0;
  std::size_t skipped = 0;
  std::size_t violation_count = 0;
  std::vector<Violation> violations;
  std::map<std::string, std::size_t> checked_by_law;
  std::chrono::nanoseconds elapsed{0};

  bool passed() const { return violation_count == 0; }

  /// Records one law instance; the witness is only rendered on failure.
  template <class Witness>
  bool expect(bool ok, const std::string& law, Witness&& witness) {
    ++checked;
    ++checked_by_law[law];
    if (!ok) record(law, witness());
    return ok;
  }

  void record(const std::string& law, std::string witness) {
    ++violation_count;
    if (violations.size() < kMaxStored) violations.push_back({law, std::move(witness)});
  }

  void merge(const LawReport& other) {
    checked += other.checked;
    skipped += other.skipped;
    violation_count += other.violation_count;
    for (const auto& v : other.violations)
      if (violations.size() < kMaxStored) violations.push_back(v);
    for (const auto& [law, n] : other.checked_by_law) checked_by_law[law] += n;
    elapsed += other.elapsed;
  }
};

/// Sets report.elapsed from construction to destruction.
class ScopedTimer {
 public:
  explicit ScopedTimer(LawReport& report)
      : report_(report), start_(std::chrono::steady_clock::now()) {}
  ~ScopedTimer() { report_.elapsed = std::chrono::steady_clock::now() - start_; }
  ScopedTimer(const ScopedTimer&) = delete;
  ScopedTimer& operator=(const ScopedTimer&) = delete;

 private:
  LawReport& report_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace dagfix

#endif
