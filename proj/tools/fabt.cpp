#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fabt/backtranslation.hpp"
#include "fabt/compiler.hpp"
#include "fabt/contexts.hpp"
#include "fabt/generators.hpp"
#include "fabt/harness.hpp"
#include "fabt/support/large_stack.hpp"
#include "fabt/syntax.hpp"
#include "json.hpp"

namespace {

using namespace fabt;
using json = nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

// Thrown for problems with the command line that CLI11 cannot see.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Lang { Auto, Src, Tgt };

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

Lang resolve(Lang lang, const std::string& path) {
  if (lang != Lang::Auto) return lang;
  if (ends_with(path, ".src")) return Lang::Src;
  if (ends_with(path, ".tgt")) return Lang::Tgt;
  throw UsageError("cannot tell the language of " + path + "; pass --lang src|tgt");
}

SrcTerm src_term(const std::string& path) { return parse_src_term(read_input(path)); }
TgtTerm tgt_term(const std::string& path) { return parse_tgt_term(read_input(path)); }

// Parses "x:T" into a name and a type.
std::pair<Symbol, Type> binding(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos || colon == 0) throw UsageError("expected name:type, got " + text);
  return {Symbol(text.substr(0, colon)), parse_type(text.substr(colon + 1))};
}

Type arrow_type(const std::string& text, const char* what) {
  const Type t = parse_type(text);
  if (t.kind() != TypeKind::Arrow) throw UsageError(std::string(what) + " must be a function type");
  return t;
}

struct Output {
  bool as_json = false;
  std::string report_path;

  // Plain result: the text as is, or {"<key>": text, ...extra}.
  void result(const std::string& key, const std::string& text, json extra = json::object()) const {
    if (!as_json) {
      std::cout << text << '\n';
      return;
    }
    json j;
    j[key] = text;
    for (auto& [k, v] : extra.items()) j[k] = v;
    std::cout << j.dump(2) << '\n';
  }

  void report(const TestReport& r) const {
    const std::string text = as_json ? r.to_json() : r.to_text();
    if (report_path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream out(report_path);
    if (!out) throw UsageError("cannot write " + report_path);
    out << text;
  }
};

struct GenFlags {
  std::uint64_t seed = 1;
  unsigned count = GenConfig{}.random_count;
  unsigned max_size = GenConfig{}.exhaustive_size;
  unsigned random_max_size = GenConfig{}.random_max_size;
  std::uint64_t fuel = 0;
  std::uint64_t src_fuel = 0;
  unsigned workers = 0;
  bool stop = false;
  bool all_cases = false;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--seed", seed, "Seed for random contexts");
    cmd->add_option("--count", count, "Number of random contexts");
    cmd->add_option("--max-size", max_size, "Contexts up to this many nodes are enumerated exhaustively");
    cmd->add_option("--random-max-size", random_max_size, "Largest random context");
    cmd->add_option("--fuel", fuel, "Target step budget per run (default 100000 or FABT_DEFAULT_FUEL)");
    cmd->add_option("--src-fuel", src_fuel, "Source step budget per run (default 1000000)");
    cmd->add_option("--workers", workers, "Worker threads (0: one per core)");
    cmd->add_flag("--stop-at-disagree", stop, "Stop at the first disagreement");
    cmd->add_flag("--all-cases", all_cases, "Record agreeing cases in the report too");
  }

  GenConfig config() const {
    GenConfig cfg;
    cfg.seed = seed;
    cfg.random_count = count;
    cfg.exhaustive_size = max_size;
    cfg.random_max_size = random_max_size;
    cfg.fuel = fuel ? fuel : default_fuel(kDefaultTgtFuel);
    cfg.src_fuel = src_fuel ? src_fuel : kDefaultSrcFuel;
    cfg.workers = workers;
    cfg.stop_at_disagree = stop;
    cfg.record_agreeing = all_cases;
    return cfg;
  }
};

json observation_json(const Observation& o) {
  const std::string text = o.to_string();
  json j{{"kind", text.substr(0, text.find(':'))}, {"steps", o.steps}};
  if (o.base != Observation::Base::None) j["value"] = to_string(o.base);
  return j;
}

// "terminates:3 value=true" or "wrong:1".
std::string observation_text(const Observation& o) {
  std::string text = o.to_string();
  if (o.base != Observation::Base::None) text += " value=" + std::string(to_string(o.base));
  return text;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Compiler, back-translation and equivalence testing for a typed and an untyped lambda calculus"};
  app.require_subcommand(1);
  Output out;
  std::string emit = "text";
  app.add_option("--emit", emit, "Output format")->check(CLI::IsMember({"text", "json"}));

  std::string lang_name = "auto";
  auto lang_option = [&](CLI::App* cmd) {
    cmd->add_option("--lang", lang_name, "Language of the inputs (default: by extension)")
        ->check(CLI::IsMember({"auto", "src", "tgt"}));
  };
  auto lang = [&] { return lang_name == "src" ? Lang::Src : lang_name == "tgt" ? Lang::Tgt : Lang::Auto; };

  // typecheck
  std::string file;
  std::string type_text;
  std::string hole_type_text;
  auto* typecheck_cmd = app.add_subcommand("typecheck", "Type of a source term, or of a source context with --hole-type");
  typecheck_cmd->add_option("file", file, "Source file (- for stdin)")->required();
  typecheck_cmd->add_option("--type", type_text, "Check against this type instead of inferring");
  typecheck_cmd->add_option("--hole-type", hole_type_text, "Type of the hole when the input is a context");

  // scopecheck
  std::vector<std::string> scope_names;
  auto* scope_cmd = app.add_subcommand("scopecheck", "Check that a target term or context is well scoped");
  scope_cmd->add_option("file", file, "Target file")->required();
  scope_cmd->add_option("--env", scope_names, "Names in scope, comma separated")->delimiter(',');

  // run
  std::uint64_t fuel = 0;
  auto* run_cmd = app.add_subcommand("run", "Evaluate a closed term");
  run_cmd->add_option("file", file, "Input file")->required();
  run_cmd->add_option("--fuel", fuel, "Step budget (default 100000 or FABT_DEFAULT_FUEL)");
  lang_option(run_cmd);

  // erase
  auto* erase_cmd = app.add_subcommand("erase", "Erase a source term or context to the target");
  erase_cmd->add_option("file", file, "Source file")->required();

  // compile
  bool modular = false;
  std::string free_text;
  std::string self_name = "x1";
  auto* compile_cmd = app.add_subcommand("compile", "Compile a closed source term, or a component with --modular");
  compile_cmd->add_option("file", file, "Source file")->required();
  compile_cmd->add_option("--type", type_text, "Type of the term")->required();
  compile_cmd->add_flag("--modular", modular, "Compile a component that calls a partner");
  compile_cmd->add_option("--free", free_text, "The partner as name:type, e.g. x2:Unit -> Bool");
  compile_cmd->add_option("--self", self_name, "Name the partner uses for this component");

  // link
  std::string file2;
  std::string type1_text;
  std::string type2_text;
  std::string x1_name = "x1";
  std::string x2_name = "x2";
  auto* link_cmd = app.add_subcommand("link", "Link two components");
  link_cmd->add_option("first", file, "First component (mentions x2)")->required();
  link_cmd->add_option("second", file2, "Second component (mentions x1)")->required();
  link_cmd->add_option("--type1", type1_text, "Type of the first component (source linking)");
  link_cmd->add_option("--type2", type2_text, "Type of the second component (source linking)");
  link_cmd->add_option("--x1", x1_name, "Name of the first component");
  link_cmd->add_option("--x2", x2_name, "Name of the second component");
  lang_option(link_cmd);

  // backtranslate
  unsigned depth = 1;
  auto* back_cmd = app.add_subcommand("backtranslate", "Back-translate a closed target context");
  back_cmd->add_option("file", file, "Target context")->required();
  back_cmd->add_option("--type", type_text, "Type of the terms plugged into the result")->required();
  back_cmd->add_option("--depth", depth, "Approximation depth (at least 1)")->required();

  // plug
  auto* plug_cmd = app.add_subcommand("plug", "Plug a term into a context");
  plug_cmd->add_option("context", file, "Context file")->required();
  plug_cmd->add_option("term", file2, "Term file")->required();
  lang_option(plug_cmd);

  // equiv
  GenFlags gen;
  std::string compile_type_text;
  auto* equiv_cmd = app.add_subcommand("equiv", "Test two closed terms for target-level equivalence");
  equiv_cmd->add_option("first", file, "First term")->required();
  equiv_cmd->add_option("second", file2, "Second term")->required();
  equiv_cmd->add_option("--compile", compile_type_text, "Treat inputs as source terms and compile both at this type; without it .src inputs are erased");
  equiv_cmd->add_option("--report", out.report_path, "Write the report here instead of standard output");
  gen.add_to(equiv_cmd);

  // search
  auto* search_cmd = app.add_subcommand("search", "Look for a source context telling two source terms apart");
  search_cmd->add_option("first", file, "First source term")->required();
  search_cmd->add_option("second", file2, "Second source term")->required();
  search_cmd->add_option("--type", type_text, "Their common type")->required();
  gen.add_to(search_cmd);

  // check-backtrans
  std::string term_file;
  std::vector<unsigned> depths;
  unsigned cases = 100;
  auto* cb_cmd = app.add_subcommand("check-backtrans", "Check both directions of back-translation correctness");
  cb_cmd->add_option("--ctx", file, "Target context (omit for a random corpus)");
  cb_cmd->add_option("--term", term_file, "Source term plugged into it");
  cb_cmd->add_option("--type", type_text, "Type of the term");
  cb_cmd->add_option("--depths", depths, "Depths for the imprecise direction")->delimiter(',');
  cb_cmd->add_option("--cases", cases, "Size of the random corpus");
  cb_cmd->add_option("--report", out.report_path, "Write the report here instead of standard output");
  gen.add_to(cb_cmd);

  // check-modularity
  auto* cm_cmd = app.add_subcommand("check-modularity", "Compare whole-program and separate compilation of two components");
  cm_cmd->add_option("first", file, "First source component (mentions x2)")->required();
  cm_cmd->add_option("second", file2, "Second source component (mentions x1)")->required();
  cm_cmd->add_option("--type1", type1_text, "Type of the first component")->required();
  cm_cmd->add_option("--type2", type2_text, "Type of the second component")->required();
  cm_cmd->add_option("--x1", x1_name, "Name of the first component");
  cm_cmd->add_option("--x2", x2_name, "Name of the second component");
  cm_cmd->add_option("--report", out.report_path, "Write the report here instead of standard output");
  gen.add_to(cm_cmd);

  // uval
  std::string what;
  unsigned by = 1;
  std::string tag_text;
  auto* uval_cmd = app.add_subcommand("uval", "Print back-translation building blocks");
  uval_cmd->add_option("what", what, "type, unk, omega, case, upgrade, downgrade, inject, extract or emulate")
      ->required()
      ->check(CLI::IsMember({"type", "unk", "omega", "case", "upgrade", "downgrade", "inject", "extract", "emulate"}));
  uval_cmd->add_option("--depth", depth, "Level n");
  uval_cmd->add_option("--by", by, "Levels added or removed by upgrade and downgrade");
  uval_cmd->add_option("--type", type_text, "Type for omega, inject and extract");
  uval_cmd->add_option("--tag", tag_text, "Tag for case: unk, unit, bool, prod, sum or arrow");
  uval_cmd->add_option("file", file, "Target term for emulate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  out.as_json = emit == "json";

  try {
    if (typecheck_cmd->parsed()) {
      const auto parsed = parse_src(read_input(file));
      if (const auto* t = std::get_if<SrcTerm>(&parsed)) {
        if (!type_text.empty()) {
          check_type({}, *t, parse_type(type_text));
          out.result("type", type_text);
        } else {
          out.result("type", to_string(typecheck({}, *t)));
        }
        return kOk;
      }
      if (hole_type_text.empty()) throw UsageError("the input is a context; pass --hole-type");
      const Type outer = type_text.empty() ? Type{} : parse_type(type_text);
      const CtxType ct = ctx_typecheck(std::get<SrcCtx>(parsed), {}, parse_type(hole_type_text), outer);
      out.result("type", to_string(ct.outer_type));
      return kOk;
    }

    if (scope_cmd->parsed()) {
      ScopeEnv env;
      for (const auto& n : scope_names) env.push_back(Symbol(n));
      const auto parsed = parse_tgt(read_input(file));
      if (const auto* t = std::get_if<TgtTerm>(&parsed)) {
        if (!well_scoped(env, *t)) {
          std::string names;
          for (Symbol x : t->free_vars())
            if (std::find(env.begin(), env.end(), x) == env.end()) names += (names.empty() ? "" : " ") + x.str();
          out.result("unbound", names);
          return kFailed;
        }
      } else {
        try {
          ctx_well_scoped(std::get<TgtCtx>(parsed), env);
        } catch (const ScopeError& e) {
          out.result("unbound", e.what());
          return kFailed;
        }
      }
      out.result("scope", "ok");
      return kOk;
    }

    if (run_cmd->parsed()) {
      const std::uint64_t budget = fuel ? fuel : default_fuel(kDefaultTgtFuel);
      const std::string text = read_input(file);
      if (resolve(lang(), file) == Lang::Src) {
        const SrcTerm t = parse_src_term(text);
        typecheck({}, t);
        const SrcOutcome r = src_eval(t, budget);
        if (r.terminated())
          out.result("outcome", "value " + print(r.value) + " steps=" + std::to_string(r.steps));
        else
          out.result("outcome", "timeout steps=" + std::to_string(r.steps));
        return kOk;
      }
      const TgtTerm t = parse_tgt_term(text);
      if (!t.closed()) throw ScopeError("the program has free variables");
      const TgtOutcome r = tgt_eval(t, budget);
      switch (r.status) {
        case TgtOutcome::Status::Value:
          out.result("outcome", "value " + print(r.value) + " steps=" + std::to_string(r.steps));
          break;
        case TgtOutcome::Status::Wrong:
          out.result("outcome", "wrong steps=" + std::to_string(r.steps));
          break;
        case TgtOutcome::Status::FuelExhausted:
          out.result("outcome", "timeout steps=" + std::to_string(r.steps));
          break;
      }
      return kOk;
    }

    if (erase_cmd->parsed()) {
      const auto parsed = parse_src(read_input(file));
      if (const auto* t = std::get_if<SrcTerm>(&parsed))
        out.result("term", print(erase(*t)));
      else
        out.result("context", print(erase_ctx(std::get<SrcCtx>(parsed))));
      return kOk;
    }

    if (compile_cmd->parsed()) {
      const SrcTerm t = src_term(file);
      if (!modular) {
        if (!free_text.empty()) throw UsageError("--free needs --modular");
        out.result("term", print(compile(t, parse_type(type_text))));
        return kOk;
      }
      if (free_text.empty()) throw UsageError("--modular needs --free x:T");
      const Type self = arrow_type(type_text, "--type");
      const auto [partner, partner_type] = binding(free_text);
      if (partner_type.kind() != TypeKind::Arrow) throw UsageError("the partner must have a function type");
      const LinkSignature sig{self.left(), self.right(), partner_type.left(), partner_type.right(), Symbol(self_name),
                              partner};
      out.result("term", print(compile_modular(t, sig)));
      return kOk;
    }

    if (link_cmd->parsed()) {
      if (resolve(lang(), file) == Lang::Src) {
        if (type1_text.empty() || type2_text.empty()) throw UsageError("source linking needs --type1 and --type2");
        const Type t1 = arrow_type(type1_text, "--type1");
        const Type t2 = arrow_type(type2_text, "--type2");
        const LinkSignature sig{t1.left(), t1.right(), t2.left(), t2.right(), Symbol(x1_name), Symbol(x2_name)};
        out.result("term", print(link_src(src_term(file), sig, src_term(file2))));
      } else {
        out.result("term", print(link_tgt(tgt_term(file), tgt_term(file2), Symbol(x1_name), Symbol(x2_name))));
      }
      return kOk;
    }

    if (back_cmd->parsed()) {
      out.result("context", print(backtranslate(parse_tgt_ctx(read_input(file)), parse_type(type_text), depth)));
      return kOk;
    }

    if (plug_cmd->parsed()) {
      if (resolve(lang(), file) == Lang::Src)
        out.result("term", print(plug_src(parse_src_ctx(read_input(file)), src_term(file2))));
      else
        out.result("term", print(plug_tgt(parse_tgt_ctx(read_input(file)), tgt_term(file2))));
      return kOk;
    }

    if (equiv_cmd->parsed()) {
      TgtTerm a;
      TgtTerm b;
      if (!compile_type_text.empty()) {
        const Type t = parse_type(compile_type_text);
        a = compile(src_term(file), t);
        b = compile(src_term(file2), t);
      } else {
        // Source inputs without --compile are compared after erasure.
        auto load = [](const std::string& path) {
          return ends_with(path, ".src") ? erase(src_term(path)) : tgt_term(path);
        };
        a = load(file);
        b = load(file2);
      }
      const auto [verdict, report] = equiv_check_tgt(a, b, gen.config());
      out.report(report);
      if (verdict.witness) std::cerr << "witness: " << print(*verdict.witness) << '\n';
      return verdict.kind == Verdict::Disagree ? kFailed : kOk;
    }

    if (search_cmd->parsed()) {
      const Type t = parse_type(type_text);
      const SearchResult r = distinguish_search(src_term(file), src_term(file2), t, gen.config());
      if (!out.as_json) {
        if (r.witness) {
          std::cout << "witness " << print(*r.witness) << '\n'
                    << "source obs1=" << observation_text(r.obs1) << " obs2=" << observation_text(r.obs2) << '\n'
                    << "target " << print(*r.tgt_witness) << " obs1=" << observation_text(r.tgt_obs1)
                    << " obs2=" << observation_text(r.tgt_obs2) << '\n';
        } else {
          std::cout << "not-found tried=" << r.tried << '\n';
        }
      } else {
        json j{{"found", r.witness.has_value()}, {"tried", r.tried}};
        if (r.witness) {
          j["witness"] = print(*r.witness);
          j["obs1"] = observation_json(r.obs1);
          j["obs2"] = observation_json(r.obs2);
          j["target_witness"] = print(*r.tgt_witness);
          j["target_obs1"] = observation_json(r.tgt_obs1);
          j["target_obs2"] = observation_json(r.tgt_obs2);
          j["target_distinguishes"] = r.tgt_distinguishes();
        }
        std::cout << j.dump(2) << '\n';
      }
      return r.witness && !r.tgt_distinguishes() ? kFailed : kOk;
    }

    if (cb_cmd->parsed()) {
      const GenConfig cfg = gen.config();
      std::vector<BacktransCase> corpus;
      if (!file.empty()) {
        if (term_file.empty() || type_text.empty()) throw UsageError("--ctx needs --term and --type");
        corpus.push_back({parse_tgt_ctx(read_input(file)), src_term(term_file), parse_type(type_text), depths});
      } else {
        Rng rng(cfg.seed);
        SrcGenOptions opts;
        opts.size = 8;
        for (unsigned i = 0; i < cases; ++i) {
          const Type t = random_type(rng, 2);
          corpus.push_back({random_tgt_ctx(rng, 12), random_src_term(rng, {}, t, opts), t, depths});
        }
      }
      const TestReport report = backtrans_direction_check(corpus, cfg.fuel, cfg.src_fuel, cfg.workers);
      out.report(report);
      return report.overall() == Verdict::Fail ? kFailed : kOk;
    }

    if (cm_cmd->parsed()) {
      const Type t1 = arrow_type(type1_text, "--type1");
      const Type t2 = arrow_type(type2_text, "--type2");
      const LinkSignature sig{t1.left(), t1.right(), t2.left(), t2.right(), Symbol(x1_name), Symbol(x2_name)};
      const auto [verdict, report] = modularity_check(src_term(file), src_term(file2), sig, gen.config());
      out.report(report);
      if (verdict.witness) std::cerr << "witness: " << print(*verdict.witness) << '\n';
      return verdict.kind == Verdict::Disagree ? kFailed : kOk;
    }

    if (uval_cmd->parsed()) {
      auto need_type = [&] {
        if (type_text.empty()) throw UsageError(what + " needs --type");
        return parse_type(type_text);
      };
      if (what == "type") {
        out.result("type", to_string(uval_type(depth)));
      } else if (what == "unk") {
        out.result("term", print(unk_uval(depth)));
      } else if (what == "omega") {
        out.result("term", print(omega(need_type())));
      } else if (what == "case") {
        const auto tag = parse_uval_tag(tag_text);
        if (!tag) throw UsageError("unknown tag " + tag_text);
        out.result("term", print(case_uval(*tag, depth)), json{{"type", to_string(case_uval_type(*tag, depth))}});
      } else if (what == "upgrade") {
        out.result("term", print(upgrade_term(depth, by)));
      } else if (what == "downgrade") {
        out.result("term", print(downgrade_term(depth, by)));
      } else if (what == "inject") {
        out.result("term", print(inject_term(need_type(), depth)));
      } else if (what == "extract") {
        out.result("term", print(extract_term(need_type(), depth)));
      } else {
        if (file.empty()) throw UsageError("emulate needs a target file");
        const auto parsed = parse_tgt(read_input(file));
        if (const auto* t = std::get_if<TgtTerm>(&parsed))
          out.result("term", print(emulate(depth, *t)));
        else
          out.result("context", print(emulate_ctx(depth, std::get<TgtCtx>(parsed))));
      }
      return kOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const TypeError& e) {
    std::cerr << "type error: " << e.what() << '\n';
    return kUsage;
  } catch (const ScopeError& e) {
    std::cerr << "scope error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace

int main(int argc, char** argv) {
  return fabt::run_with_large_stack([&] { return run_cli(argc, argv); });
}
