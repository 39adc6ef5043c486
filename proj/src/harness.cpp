#include "fabt/harness.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <unordered_set>

#include "fabt/backtranslation.hpp"
#include "fabt/compiler.hpp"
#include "fabt/generators.hpp"
#include "fabt/support/large_stack.hpp"
#include "fabt/syntax.hpp"
#include "json.hpp"

namespace fabt {

namespace {

Observation::Base base_of(Kind k) {
  switch (k) {
    case Kind::Unit:
      return Observation::Base::Unit;
    case Kind::True:
      return Observation::Base::True;
    case Kind::False:
      return Observation::Base::False;
    default:
      return Observation::Base::None;
  }
}

std::string_view kind_name(Observation::Kind k) {
  switch (k) {
    case Observation::Kind::Terminates:
      return "terminates";
    case Observation::Kind::GoesWrong:
      return "wrong";
    case Observation::Kind::Timeout:
      return "timeout";
  }
  return "?";
}

std::size_t worker_count(unsigned configured) { return configured == 0 ? default_workers() : configured; }

constexpr std::size_t kBatch = 4096;

std::size_t node_count(const ast::Node& n) {
  std::size_t k = 1;
  for (int i = 0; i < ast::arity(n.kind); ++i) k += node_count(*n.kids[static_cast<std::size_t>(i)]);
  return k;
}

}  // namespace

std::string_view to_string(Observation::Base b) {
  switch (b) {
    case Observation::Base::Unit:
      return "unit";
    case Observation::Base::True:
      return "true";
    case Observation::Base::False:
      return "false";
    case Observation::Base::None:
      break;
  }
  return "";
}

bool SearchResult::tgt_distinguishes() const {
  return tgt_witness && compare_observations(tgt_obs1, tgt_obs2) == Verdict::Disagree;
}

std::string Observation::to_string() const { return std::string(kind_name(kind)) + ":" + std::to_string(steps); }

Observation observe_tgt(const TgtTerm& t, std::uint64_t fuel) {
  const TgtOutcome out = tgt_eval(t, fuel);
  switch (out.status) {
    case TgtOutcome::Status::Value:
      return {Observation::Kind::Terminates, out.steps, base_of(out.value.kind())};
    case TgtOutcome::Status::Wrong:
      return {Observation::Kind::GoesWrong, out.steps, Observation::Base::None};
    case TgtOutcome::Status::FuelExhausted:
      break;
  }
  return {Observation::Kind::Timeout, out.steps, Observation::Base::None};
}

Observation observe_src(const SrcTerm& t, std::uint64_t fuel) {
  const SrcOutcome out = src_eval(t, fuel);
  if (out.terminated()) return {Observation::Kind::Terminates, out.steps, base_of(out.value.kind())};
  return {Observation::Kind::Timeout, out.steps, Observation::Base::None};
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Agree:
      return "agree";
    case Verdict::Disagree:
      return "disagree";
    case Verdict::Inconclusive:
      return "inconclusive";
    case Verdict::Pass:
      return "pass";
    case Verdict::Fail:
      return "fail";
    case Verdict::Vacuous:
      return "vacuous";
  }
  return "?";
}

Verdict compare_observations(const Observation& a, const Observation& b, bool* values_compared) {
  if (values_compared) *values_compared = false;
  if (a.kind == Observation::Kind::Timeout || b.kind == Observation::Kind::Timeout) return Verdict::Inconclusive;
  if (a.kind != b.kind) return Verdict::Disagree;
  if (a.terminates() && a.base != Observation::Base::None && b.base != Observation::Base::None) {
    if (values_compared) *values_compared = true;
    if (a.base != b.base) return Verdict::Disagree;
  }
  return Verdict::Agree;
}

std::uint64_t default_fuel(std::uint64_t fallback) {
  const char* env = std::getenv("FABT_DEFAULT_FUEL");
  if (!env || !*env) return fallback;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || v == 0) return fallback;
  return v;
}

void for_each_tgt_context(const GenConfig& cfg, const std::function<bool(const TgtCtx&)>& visit) {
  std::unordered_set<std::string> seen;
  std::vector<std::pair<std::size_t, TgtCtx>> probes;
  auto fresh = [&](const TgtCtx& c) { return seen.insert(print(c)).second; };
  for (const std::vector<TgtCtx>& corpus : {probe_tgt_ctxs(), cfg.extra_probes})
    for (const TgtCtx& c : corpus) {
      if (!fresh(c)) continue;
      probes.emplace_back(node_count(c.term().node()), c);
      if (!visit(c)) return;
    }
  // Enumeration never repeats itself, so it is only checked against probes.
  auto is_probe = [&](const TgtCtx& c) {
    const std::size_t n = node_count(c.term().node());
    return std::any_of(probes.begin(), probes.end(), [&](const auto& p) { return p.first == n && p.second == c; });
  };
  bool going = true;
  enumerate_tgt_ctxs(cfg.exhaustive_size, [&](const TgtCtx& c) {
    if (is_probe(c)) return true;
    going = visit(c);
    return going;
  });
  if (!going || cfg.random_count == 0) return;
  // Random contexts start above the enumerated sizes, so the two parts do
  // not overlap; repeats among them are redrawn a bounded number of times.
  Rng rng(cfg.seed);
  const unsigned min_size = std::min(cfg.exhaustive_size + 1, std::max(cfg.random_max_size, 1u));
  unsigned emitted = 0;
  for (std::size_t draws = 0; emitted < cfg.random_count && draws < 10 * std::size_t{cfg.random_count}; ++draws) {
    const TgtCtx c = random_tgt_ctx(rng, cfg.random_max_size, min_size);
    if (!fresh(c)) continue;
    ++emitted;
    if (!visit(c)) return;
  }
}

std::vector<TgtCtx> gen_tgt_contexts(const GenConfig& cfg) {
  std::vector<TgtCtx> out;
  for_each_tgt_context(cfg, [&](const TgtCtx& c) {
    out.push_back(c);
    return true;
  });
  return out;
}

void TestReport::add(CaseRecord r, bool keep_agreeing) {
  ++totals_[static_cast<std::size_t>(r.verdict)];
  if (keep_agreeing || (r.verdict != Verdict::Agree && r.verdict != Verdict::Pass)) cases.push_back(std::move(r));
}

std::size_t TestReport::total() const {
  std::size_t n = 0;
  for (std::size_t k : totals_) n += k;
  return n;
}

std::size_t TestReport::count(Verdict v) const { return totals_[static_cast<std::size_t>(v)]; }

Verdict TestReport::overall() const {
  if (count(Verdict::Disagree) > 0) return Verdict::Disagree;
  if (count(Verdict::Fail) > 0) return Verdict::Fail;
  const bool pass_style = count(Verdict::Pass) + count(Verdict::Vacuous) > 0;
  if (count(Verdict::Agree) + count(Verdict::Pass) == 0 && count(Verdict::Inconclusive) > 0) return Verdict::Inconclusive;
  return pass_style ? Verdict::Pass : Verdict::Agree;
}

std::string TestReport::to_text() const {
  std::ostringstream os;
  os << "config check=" << check;
  for (const auto& [k, v] : config) os << ' ' << k << '=' << v;
  os << '\n';
  for (const CaseRecord& r : cases) {
    os << "case=" << r.id << " ctx=\"" << r.ctx << "\" obs1=" << r.obs1.to_string() << " obs2=" << r.obs2.to_string()
       << " verdict=" << to_string(r.verdict);
    if (r.values_compared)
      os << " values=" << to_string(r.obs1.base) << ',' << to_string(r.obs2.base);
    for (const auto& [k, v] : r.extra) os << ' ' << k << '=' << v;
    os << '\n';
  }
  os << "summary check=" << check << " cases=" << total();
  if (cases.size() != total()) os << " recorded=" << cases.size();
  for (Verdict v : {Verdict::Agree, Verdict::Disagree, Verdict::Inconclusive, Verdict::Pass, Verdict::Fail, Verdict::Vacuous})
    os << ' ' << to_string(v) << '=' << count(v);
  os << " verdict=" << to_string(overall()) << '\n';
  return os.str();
}

std::string TestReport::to_json() const {
  using json = nlohmann::ordered_json;
  auto obs = [](const Observation& o) {
    json j{{"kind", kind_name(o.kind)}, {"steps", o.steps}};
    if (o.base != Observation::Base::None) j["value"] = to_string(o.base);
    return j;
  };
  json j;
  j["check"] = check;
  json cfg = json::object();
  for (const auto& [k, v] : config) cfg[k] = v;
  j["config"] = cfg;
  json list = json::array();
  for (const CaseRecord& r : cases) {
    json c{{"id", r.id}, {"ctx", r.ctx}, {"obs1", obs(r.obs1)}, {"obs2", obs(r.obs2)}, {"verdict", to_string(r.verdict)},
           {"values_compared", r.values_compared}};
    for (const auto& [k, v] : r.extra) c[k] = v;
    list.push_back(std::move(c));
  }
  j["cases"] = std::move(list);
  json summary{{"cases", total()}, {"recorded", cases.size()}};
  for (Verdict v : {Verdict::Agree, Verdict::Disagree, Verdict::Inconclusive, Verdict::Pass, Verdict::Fail, Verdict::Vacuous})
    summary[std::string(to_string(v))] = count(v);
  summary["verdict"] = to_string(overall());
  j["summary"] = std::move(summary);
  return j.dump(2) + "\n";
}

std::vector<std::pair<std::string, std::string>> describe(const GenConfig& cfg) {
  return {{"seed", std::to_string(cfg.seed)},
          {"exhaustive_size", std::to_string(cfg.exhaustive_size)},
          {"random_count", std::to_string(cfg.random_count)},
          {"random_max_size", std::to_string(cfg.random_max_size)},
          {"fuel", std::to_string(cfg.fuel)},
          {"src_fuel", std::to_string(cfg.src_fuel)},
          {"workers", std::to_string(worker_count(cfg.workers))}};
}

std::pair<EquivVerdict, TestReport> equiv_check_tgt(const TgtTerm& t1, const TgtTerm& t2, const GenConfig& cfg) {
  if (!t1.closed() || !t2.closed()) throw ScopeError("equivalence checks need closed terms");
  TestReport report;
  report.check = "equiv";
  report.config = describe(cfg);
  EquivVerdict verdict;
  std::vector<TgtCtx> batch;
  std::size_t next_id = 0;
  bool stopped = false;
  auto flush = [&] {
    std::vector<CaseRecord> records(batch.size());
    parallel_for(batch.size(), worker_count(cfg.workers), [&](std::size_t i) {
      CaseRecord& r = records[i];
      r.id = next_id + i;
      r.obs1 = observe_tgt(plug_tgt(batch[i], t1), cfg.fuel);
      r.obs2 = observe_tgt(plug_tgt(batch[i], t2), cfg.fuel);
      r.verdict = compare_observations(r.obs1, r.obs2, &r.values_compared);
      if (cfg.record_agreeing || r.verdict != Verdict::Agree) r.ctx = print(batch[i]);
    });
    for (std::size_t i = 0; i < records.size() && !stopped; ++i) {
      if (records[i].verdict == Verdict::Disagree && !verdict.witness) {
        verdict.witness = batch[i];
        verdict.obs1 = records[i].obs1;
        verdict.obs2 = records[i].obs2;
        stopped = cfg.stop_at_disagree;
      }
      report.add(std::move(records[i]), cfg.record_agreeing);
    }
    next_id += batch.size();
    batch.clear();
  };
  for_each_tgt_context(cfg, [&](const TgtCtx& c) {
    batch.push_back(c);
    if (batch.size() == kBatch) flush();
    return !stopped;
  });
  if (!stopped && !batch.empty()) flush();
  verdict.kind = report.overall();
  verdict.inconclusive = report.count(Verdict::Inconclusive);
  return {std::move(verdict), std::move(report)};
}

namespace {

// Contexts that take a τ apart down to a boolean: projections, case
// analysis, and application to small argument values.
void typed_probes(Type t, const SrcTerm& inner, std::vector<SrcTerm>& out, std::size_t limit) {
  if (out.size() >= limit) return;
  switch (t.kind()) {
    case TypeKind::Bool:
      out.push_back(inner);
      return;
    case TypeKind::Unit:
      out.push_back(SrcTerm::seq(inner, SrcTerm::truth()));
      return;
    case TypeKind::Prod:
      typed_probes(t.left(), SrcTerm::proj1(inner), out, limit);
      typed_probes(t.right(), SrcTerm::proj2(inner), out, limit);
      return;
    case TypeKind::Sum: {
      const Symbol x("s");
      out.push_back(SrcTerm::case_of(inner, x, SrcTerm::truth(), x, SrcTerm::falsity()));
      std::vector<SrcTerm> left;
      std::vector<SrcTerm> right;
      typed_probes(t.left(), SrcTerm::var(x), left, limit);
      typed_probes(t.right(), SrcTerm::var(x), right, limit);
      for (const SrcTerm& l : left) out.push_back(SrcTerm::case_of(inner, x, l, x, SrcTerm::falsity()));
      for (const SrcTerm& r : right) out.push_back(SrcTerm::case_of(inner, x, SrcTerm::falsity(), x, r));
      return;
    }
    case TypeKind::Arrow:
      for (const SrcTerm& v : small_values(t.left(), 8)) typed_probes(t.right(), SrcTerm::app(inner, v), out, limit);
      return;
  }
}

}  // namespace

SearchResult distinguish_search(const SrcTerm& t1, const SrcTerm& t2, Type t, const GenConfig& cfg) {
  check_type({}, t1, t);
  check_type({}, t2, t);
  std::vector<SrcCtx> candidates;
  std::vector<SrcTerm> probes;
  typed_probes(t, SrcTerm::hole(), probes, 256);
  for (const SrcTerm& p : probes) candidates.emplace_back(p);
  Rng rng(cfg.seed);
  SrcGenOptions opts;
  opts.size = 10;
  for (unsigned i = 0; i < cfg.random_count; ++i) candidates.push_back(random_src_ctx(rng, t, Type::boolean(), opts));

  SearchResult result;
  for (const SrcCtx& c : candidates) {
    ++result.tried;
    const Observation a = observe_src(plug_src(c, t1), cfg.src_fuel);
    const Observation b = observe_src(plug_src(c, t2), cfg.src_fuel);
    if (a.terminates() && b.terminates() && a.base != b.base) {
      result.witness = c;
      result.obs1 = a;
      result.obs2 = b;
      break;
    }
  }
  if (result.witness) {
    result.tgt_witness = erase_ctx(*result.witness);
    result.tgt_obs1 = observe_tgt(plug_tgt(*result.tgt_witness, compile(t1, t)), cfg.fuel);
    result.tgt_obs2 = observe_tgt(plug_tgt(*result.tgt_witness, compile(t2, t)), cfg.fuel);
  }
  return result;
}

TestReport backtrans_direction_check(const std::vector<BacktransCase>& cases, std::uint64_t fuel_tgt,
                                     std::uint64_t fuel_src, unsigned workers) {
  TestReport report;
  report.check = "backtrans";
  report.config = {{"fuel", std::to_string(fuel_tgt)}, {"src_fuel", std::to_string(fuel_src)}};
  std::vector<std::vector<CaseRecord>> per_case(cases.size());
  parallel_for(cases.size(), worker_count(workers), [&](std::size_t i) {
    const BacktransCase& c = cases[i];
    const std::string ctx = print(c.ctx);
    const Observation target = observe_tgt(plug_tgt(c.ctx, compile(c.term, c.type)), fuel_tgt);
    auto record = [&](const char* dir, unsigned depth, const Observation& src, Verdict v) {
      CaseRecord r;
      r.id = i;
      r.ctx = ctx;
      r.obs1 = target;
      r.obs2 = src;
      r.verdict = v;
      r.extra = {{"dir", dir}, {"depth", std::to_string(depth)}, {"term", print(c.term)}, {"type", to_string(c.type)}};
      per_case[i].push_back(std::move(r));
    };
    if (target.terminates()) {
      const unsigned n = static_cast<unsigned>(target.steps + 1);
      const Observation src = observe_src(plug_src(backtranslate(c.ctx, c.type, n), c.term), fuel_src);
      record("precise", n, src, src.terminates() ? Verdict::Pass : Verdict::Inconclusive);
    } else {
      record("precise", 0, Observation{}, Verdict::Vacuous);
    }
    for (unsigned n : c.depths) {
      const Observation src = observe_src(plug_src(backtranslate(c.ctx, c.type, n), c.term), fuel_src);
      Verdict v = Verdict::Pass;
      if (src.terminates() && target.kind == Observation::Kind::GoesWrong) v = Verdict::Fail;
      if (src.terminates() && target.kind == Observation::Kind::Timeout) v = Verdict::Inconclusive;
      record("imprecise", n, src, v);
    }
  });
  for (auto& records : per_case)
    for (auto& r : records) report.add(std::move(r));
  return report;
}

std::pair<EquivVerdict, TestReport> modularity_check(const SrcTerm& t1, const SrcTerm& t2, const LinkSignature& sig,
                                                     const GenConfig& cfg) {
  const LinkSignature rev{sig.dom2, sig.cod2, sig.dom1, sig.cod1, sig.x2, sig.x1};
  const TgtTerm whole = compile(link_src(t1, sig, t2), sig.pair());
  const TgtTerm modular = link_tgt(compile_modular(t1, sig), compile_modular(t2, rev), sig.x1, sig.x2);
  GenConfig with_probes = cfg;
  for (const SrcTerm& v : small_values(sig.dom1, 16))
    with_probes.extra_probes.emplace_back(TgtTerm::app(TgtTerm::proj1(TgtTerm::hole()), erase(v)));
  for (const SrcTerm& v : small_values(sig.dom2, 16))
    with_probes.extra_probes.emplace_back(TgtTerm::app(TgtTerm::proj2(TgtTerm::hole()), erase(v)));
  auto result = equiv_check_tgt(whole, modular, with_probes);
  result.second.check = "modularity";
  return result;
}

}  // namespace fabt
