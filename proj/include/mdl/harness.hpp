#pragma once

// Batch scans of the R(m) = R(n) identity, the trinomial root identity and
// the power-map isomorphism classes, with deterministic JSONL/CSV reports.

#include "mdl/ff.hpp"
#include "mdl/iso.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace mdl {

inline constexpr const char *kToolVersion = "mdlab 1.0.0";

using NamedValues = std::vector<std::pair<std::string, std::int64_t>>;

struct CheckRecord {
  /// theorem, exercise, k_formula, conjecture, iso or roots.
  std::string check;
  NamedValues params;
  NamedValues observed;
  bool pass = true;
  /// Always present on failing records.
  std::optional<std::string> witness;
  /// Not serialized; marks a failure caused by an exhausted search budget.
  bool exhausted = false;
};

struct CheckTally {
  std::uint64_t total = 0;
  std::uint64_t passed = 0;
  std::uint64_t failed = 0;
  std::uint64_t exhausted = 0;
};

struct ScanReport {
  std::vector<CheckRecord> records;
  std::map<std::string, CheckTally> summary;
  std::vector<std::pair<std::string, std::string>> meta;
  /// Conjecture scans only: CONSISTENT, COUNTEREXAMPLE or INCONCLUSIVE.
  std::optional<std::string> verdict;

  void add(CheckRecord record);
  bool all_passed() const noexcept;
  bool any_exhausted() const noexcept;
};

/// MDL_THREADS when set to a positive integer, else hardware concurrency.
unsigned worker_count();

/// Runs fn(i) for i in [0, count) on worker_count() threads. The first
/// exception thrown by any item is rethrown after all workers stop.
void parallel_for(std::size_t count, const std::function<void(std::size_t)> &fn);

/// For every odd prime p <= p_max and all (m, n) in [1, p-1]^2 with
/// mn = 1 (mod p-1), compare R(m) and R(n). With digraphs (p <= 13 only),
/// also compare N(D(p;1,m), K) with N(D(p;1,n), K) and add a k_formula record
/// per exponent.
ScanReport run_theorem_scan(unsigned p_max, bool with_digraphs);

/// For each GF(p^k): every (m, n) with mn = 1 (mod q-1) and every (a, b),
/// compare the distinct-root counts of X^{m+1}+aX+b and X^{n+1}+aX+b^m.
ScanReport run_exercise_scan(const std::vector<std::pair<std::uint64_t, unsigned>> &fields);

inline constexpr std::uint64_t kMaxConjectureField = 7;

/// Groups all (q-1)^2 digraphs by conjectured class, certifies within-class
/// pairs by power maps and separates class representatives by fingerprints
/// or budgeted search.
ScanReport run_conjecture_scan(const FieldCtx &ctx, std::uint64_t budget = kDefaultSearchBudget);

enum class ReportFormat { Jsonl, Csv };
ReportFormat parse_report_format(std::string_view text);

/// Throws IoFailure when the stream goes bad.
void emit_report(const ScanReport &report, ReportFormat format, std::ostream &out);

/// 0 all passed, 1 a failing record, 3 only budget exhaustion.
int exit_code(const ScanReport &report);

/// "2^2,5,3^2" -> {(2,2),(5,1),(3,2)}.
std::vector<std::pair<std::uint64_t, unsigned>> parse_field_list(std::string_view text);

} // namespace mdl
