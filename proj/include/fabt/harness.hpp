#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fabt/contexts.hpp"
#include "fabt/source.hpp"
#include "fabt/target.hpp"

namespace fabt {

/// Terminates means termination with a value.
struct Observation {
  enum class Kind : std::uint8_t { Terminates, GoesWrong, Timeout };
  /// The value when it is unit, true or false.
  enum class Base : std::uint8_t { None, Unit, True, False };

  Kind kind = Kind::Timeout;
  std::uint64_t steps = 0;
  Base base = Base::None;

  bool terminates() const { return kind == Kind::Terminates; }
  /// "terminates:12", "wrong:3", "timeout:100000".
  std::string to_string() const;
  friend bool operator==(const Observation&, const Observation&) = default;
};

/// "unit", "true", "false", or "" for None.
std::string_view to_string(Observation::Base b);

Observation observe_tgt(const TgtTerm& t, std::uint64_t fuel);
Observation observe_src(const SrcTerm& t, std::uint64_t fuel);

enum class Verdict : std::uint8_t { Agree, Disagree, Inconclusive, Pass, Fail, Vacuous };
std::string_view to_string(Verdict v);

/// Equi-termination of two observations, extended with a comparison of base
/// values when both terminate. Any timeout makes the case inconclusive.
Verdict compare_observations(const Observation& a, const Observation& b, bool* values_compared = nullptr);

inline constexpr std::uint64_t kDefaultTgtFuel = 100000;
inline constexpr std::uint64_t kDefaultSrcFuel = 1000000;

/// FABT_DEFAULT_FUEL when set to a positive integer, otherwise `fallback`.
std::uint64_t default_fuel(std::uint64_t fallback);

struct GenConfig {
  std::uint64_t seed = 1;
  /// Contexts up to this many nodes are enumerated exhaustively.
  unsigned exhaustive_size = 7;
  /// Random contexts drawn after the exhaustive part.
  unsigned random_count = 500;
  unsigned random_max_size = 25;
  std::uint64_t fuel = kDefaultTgtFuel;
  std::uint64_t src_fuel = kDefaultSrcFuel;
  /// 0 means default_workers().
  unsigned workers = 0;
  /// Stop at the first disagreement (cases after it are not run).
  bool stop_at_disagree = false;
  /// Keep Agree and Pass records in the report. Large corpora turn this off
  /// and keep only the counts for them.
  bool record_agreeing = true;
  /// Extra probes placed right after the fixed probe corpus.
  std::vector<TgtCtx> extra_probes;
};

/// Probes, then exhaustive enumeration, then random contexts larger than
/// the exhaustive bound; duplicates (by printed form) are dropped. Identical
/// configs give identical streams. Stops early when visit returns false.
void for_each_tgt_context(const GenConfig& cfg, const std::function<bool(const TgtCtx&)>& visit);
/// for_each_tgt_context collected into a vector.
std::vector<TgtCtx> gen_tgt_contexts(const GenConfig& cfg);

struct CaseRecord {
  std::size_t id = 0;
  std::string ctx;
  Observation obs1;
  Observation obs2;
  Verdict verdict = Verdict::Inconclusive;
  bool values_compared = false;
  /// Extra key=value fields printed after the standard ones.
  std::vector<std::pair<std::string, std::string>> extra;
};

struct TestReport {
  std::string check;
  std::vector<std::pair<std::string, std::string>> config;
  /// Recorded cases in id order; all of them unless agreeing ones were elided.
  std::vector<CaseRecord> cases;

  /// Counts the case and records it unless it agrees and keep_agreeing is off.
  void add(CaseRecord r, bool keep_agreeing = true);
  /// Number of cases run, recorded or not.
  std::size_t total() const;
  std::size_t count(Verdict v) const;
  /// Disagree or Fail if any case has it; Inconclusive if nothing was
  /// conclusive; otherwise Agree (or Pass for pass/fail style checks).
  Verdict overall() const;
  /// One `case=...` line per record, then a summary line.
  std::string to_text() const;
  std::string to_json() const;

 private:
  std::array<std::size_t, 6> totals_{};
};

struct EquivVerdict {
  Verdict kind = Verdict::Agree;
  std::optional<TgtCtx> witness;
  Observation obs1;
  Observation obs2;
  std::size_t inconclusive = 0;
};

/// Compares plug(C, t1) and plug(C, t2) over gen_tgt_contexts(cfg).
std::pair<EquivVerdict, TestReport> equiv_check_tgt(const TgtTerm& t1, const TgtTerm& t2, const GenConfig& cfg);

struct SearchResult {
  std::optional<SrcCtx> witness;
  Observation obs1;
  Observation obs2;
  /// erase_ctx(witness) and its observations on compile(t1) and compile(t2).
  std::optional<TgtCtx> tgt_witness;
  Observation tgt_obs1;
  Observation tgt_obs2;
  std::size_t tried = 0;

  /// The source witness also separates the compilations.
  bool tgt_distinguishes() const;
};

/// Looks for a closed source context of Bool result type under which t1 and
/// t2 both terminate with different values. Tries typed probes first, then
/// cfg.random_count random contexts. A witness is replayed against the
/// compilations of t1 and t2 at cfg.fuel.
SearchResult distinguish_search(const SrcTerm& t1, const SrcTerm& t2, Type t, const GenConfig& cfg);

struct BacktransCase {
  TgtCtx ctx;
  SrcTerm term;
  Type type;
  /// Depths at which only the imprecise direction is checked.
  std::vector<unsigned> depths;
};

/// For each case, with k the target step count when compile(term) plugged
/// into ctx terminates: the precise direction requires the back-translation
/// at depth k+1 to terminate with a value. The imprecise direction requires,
/// at every depth tried, that a terminating back-translation implies a
/// terminating target. A precise-direction source timeout is inconclusive; a
/// non-terminating target makes the precise direction vacuous. In the
/// imprecise direction a non-terminating back-translation passes and a
/// target timeout against a terminating one is inconclusive.
TestReport backtrans_direction_check(const std::vector<BacktransCase>& cases, std::uint64_t fuel_tgt,
                                     std::uint64_t fuel_src, unsigned workers = 0);

/// Whole-program compilation of the linked source against the linked modular
/// compilations, over gen_tgt_contexts(cfg) plus projection probes that call
/// each component with every value of its domain up to depth 1.
std::pair<EquivVerdict, TestReport> modularity_check(const SrcTerm& t1, const SrcTerm& t2, const LinkSignature& sig,
                                                     const GenConfig& cfg);

/// Echo of cfg for report headers.
std::vector<std::pair<std::string, std::string>> describe(const GenConfig& cfg);

}  // namespace fabt
