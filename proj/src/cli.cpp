#include "nilp/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "nilp/errors.hpp"
#include "nilp/families.hpp"
#include "nilp/flows.hpp"
#include "nilp/io.hpp"
#include "nilp/sampling.hpp"
#include "nilp/search.hpp"
#include "nilp/ybe.hpp"

namespace nilp {
namespace {

std::uint64_t env_or(const char* name, std::uint64_t fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  try {
    return std::stoull(v);
  } catch (const std::exception&) {
    throw PreconditionError(std::string(name) + " must be a non-negative integer");
  }
}

struct Common {
  int threads = 0;
  bool slow = false;
  std::string output;
};

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  void emit(const Common& c, const Json& doc) const {
    if (c.output.empty()) {
      out_ << dump_document(doc);
    } else {
      write_json_file(c.output, doc);
    }
  }

  // Whole-carrier work above p = 7 runs only on request.
  static void gate(const Shape& s, const Common& c, const std::string& what) {
    if (s.p() > 7 && !c.slow) {
      throw PreconditionError(what + " at p = " + std::to_string(s.p()) + " touches all p^4 elements; pass --slow");
    }
  }

  static PreLieRing ring_from(const Json& doc, Item10Mode mode = Item10Mode::divisible) {
    const std::string kind = document_kind(doc);
    if (kind == "prelie") return prelie_from_json(doc);
    if (kind == "spec") return build(spec_from_json(doc), mode);
    throw FormatError("expected a pre-Lie table or family spec, got a " + kind + " document");
  }

  static Brace brace_from(const Json& doc, const FlowOptions& opts = {}) {
    if (document_kind(doc) == "circle") return brace_from_json(doc);
    return brace_from_prelie(ring_from(doc), opts);
  }

  std::ostream& out_;
  std::ostream& err_;
};

Json chain_json(const Chain& c) {
  Json j;
  j["orders"] = c.orders();
  j["nilpotent"] = c.nilpotent;
  j["index"] = c.nilpotent ? Json(c.index()) : Json(nullptr);
  return j;
}

FlowOptions flow_options(const std::string& xi, const std::string& range) {
  FlowOptions opts;
  if (xi != "auto") {
    try {
      opts.xi = std::stoll(xi);
    } catch (const std::exception&) {
      throw PreconditionError("--xi must be \"auto\" or an integer");
    }
  }
  if (range == "p-1") {
    opts.range = InverseSumRange::through_p_minus_1;
  } else if (range != "p-2") {
    throw PreconditionError("--inverse-range must be p-2 or p-1");
  }
  return opts;
}

Report verify_ring(const PreLieRing& ring, std::uint64_t samples, std::uint64_t seed, int threads) {
  const Shape& s = ring.shape();
  const int r = s.rank();
  Report rep;
  rep.kind = "prelie";
  rep.seed = seed;
  rep.budgets["samples"] = samples;

  CheckResult wd{"well-defined", static_cast<std::uint64_t>(r * r * r), 0, {}};
  for (const auto& v : check_well_defined(ring.table(), s)) {
    wd.record({"well-defined", {{"i", v.i}, {"j", v.j}, {"k", v.k}},
               "multiple of " + std::to_string(v.required_divisor), v.coefficient});
  }
  rep.add(std::move(wd));

  CheckResult ax{"prelie-axiom-basis", static_cast<std::uint64_t>(r * r * r), 0, {}};
  for (const auto& v : check_prelie_axiom(ring)) {
    ax.record({"prelie-axiom-basis", {{"i", v.i}, {"j", v.j}, {"k", v.k}}, to_json(s.zero()), to_json(v.defect)});
  }
  rep.add(std::move(ax));

  rep.add(parallel_check("prelie-axiom-sampled", samples, threads, [&](std::uint64_t i) -> std::optional<Violation> {
    auto rng = sample_rng(seed, i);
    const Elem a = random_elem(s, rng), b = random_elem(s, rng), c = random_elem(s, rng);
    const Elem d = prelie_defect(ring, a, b, c);
    if (d.is_zero()) return std::nullopt;
    return Violation{"prelie-axiom-sampled", Json::array({to_json(a), to_json(b), to_json(c)}), to_json(s.zero()),
                     to_json(d)};
  }));

  const Chain strong = strong_chain(ring);
  rep.add_simple("nilpotent", strong.nilpotent, nullptr, "strong chain reaches 0", strong.orders());
  rep.info["strong_chain"] = chain_json(strong);
  return rep;
}

int cmd_build(Runner& run, const Common& c, const std::string& path, bool strict) {
  const FamilySpec spec = spec_from_json(read_json_file(path));
  const Item10Mode mode = strict ? Item10Mode::summary_strict : Item10Mode::divisible;
  const ValidationReport v = validate(spec, mode);
  for (const auto& w : v.warnings) run.err_ << "warning: " << w << "\n";
  if (!v.ok()) {
    for (const auto& e : v.violations) run.err_ << "violation: " << e << "\n";
    return kExitValidation;
  }
  run.emit(c, prelie_to_json(build_unchecked(spec)));
  return kExitPass;
}

int cmd_sample(Runner& run, const Common& c, int family, Int p, int count, std::uint64_t seed) {
  std::string text;
  for (const auto& spec : catalog_sample(p, family, count, seed)) text += spec_to_json(spec).dump() + "\n";
  if (c.output.empty()) {
    run.out_ << text;
  } else {
    std::ofstream f(c.output, std::ios::binary);
    if (!(f << text)) throw FormatError("cannot write " + c.output);
  }
  return kExitPass;
}

int cmd_verify(Runner& run, const Common& c, const std::string& path, const std::string& mode, std::uint64_t samples,
               std::uint64_t seed, bool strict) {
  if (mode != "sampled" && mode != "exhaustive") throw PreconditionError("--mode must be sampled or exhaustive");
  const Json doc = read_json_file(path);
  const std::string kind = document_kind(doc);
  Report rep;
  if (kind == "circle") {
    const Brace b = brace_from_json(doc);
    Runner::gate(b.shape(), c, "brace verification");
    BraceCheckOptions opts{samples, seed, c.threads, mode == "exhaustive"};
    rep = check_brace_axioms(b, opts);
    const auto chains = brace_chains(b);
    rep.info["left_chain"] = chain_json(chains.left);
    rep.info["right_chain"] = chain_json(chains.right);
    rep.info["strong_chain"] = chain_json(chains.strong);
  } else if (kind == "prelie") {
    rep = verify_ring(prelie_from_json(doc), samples, seed, c.threads);
  } else if (kind == "spec") {
    const FamilySpec spec = spec_from_json(doc);
    const ValidationReport v = validate(spec, strict ? Item10Mode::summary_strict : Item10Mode::divisible);
    const PreLieRing ring = build_unchecked(spec);
    rep = verify_ring(ring, samples, seed, c.threads);
    rep.kind = "family";
    CheckResult fc{"family-constraints", 1, 0, {}};
    for (const auto& e : v.violations) fc.record({"family-constraints", spec_to_json(spec), e, "violated"});
    rep.add(std::move(fc));
    CheckResult ac{"advertised-chains", 1, 0, {}};
    for (const auto& e : check_advertised_chains(spec, ring)) {
      ac.record({"advertised-chains", spec_to_json(spec), advertised_chain_summary(spec.family), e});
    }
    rep.add(std::move(ac));
    if (!v.warnings.empty()) rep.info["warnings"] = v.warnings;
  } else {
    throw FormatError("verify takes a pre-Lie table, brace or family spec");
  }
  rep.budgets["mode"] = mode;
  run.emit(c, rep.to_json());
  return rep.passed() ? kExitPass : kExitValidation;
}

int cmd_flow(Runner& run, const Common& c, const std::string& path, const std::string& direction,
             const std::string& xi, const std::string& range) {
  const FlowOptions opts = flow_options(xi, range);
  const Json doc = read_json_file(path);
  if (direction == "to-brace") {
    const PreLieRing ring = Runner::ring_from(doc);
    Runner::gate(ring.shape(), c, "writing a brace table");
    try {
      run.emit(c, brace_to_json(brace_from_prelie(ring, opts), c.threads));
    } catch (const NotNilpotentError& e) {
      throw RegimeError(std::string("the flow construction needs a nilpotent ring: ") + e.what());
    }
    return kExitPass;
  }
  if (direction == "to-prelie") {
    const Brace b = brace_from_json(doc);
    const FlowContext ctx = FlowContext::for_brace(b, opts);
    run.emit(c, prelie_to_json(prelie_from_brace(b, ctx)));
    return kExitPass;
  }
  throw PreconditionError("--direction must be to-brace or to-prelie");
}

int cmd_chains(Runner& run, const Common& c, const std::string& path) {
  const Json doc = read_json_file(path);
  Json rep;
  rep["schema"] = 1;
  rep["kind"] = "chains";
  if (document_kind(doc) == "circle") {
    const Brace b = brace_from_json(doc);
    Runner::gate(b.shape(), c, "brace chains");
    const auto ch = brace_chains(b);
    rep["operation"] = "circle";
    rep["p"] = b.shape().p();
    rep["exponents"] = b.shape().exponents();
    rep["left"] = chain_json(ch.left);
    rep["right"] = chain_json(ch.right);
    rep["strong"] = chain_json(ch.strong);
  } else {
    const PreLieRing ring = Runner::ring_from(doc);
    rep["operation"] = "prelie";
    rep["p"] = ring.shape().p();
    rep["exponents"] = ring.shape().exponents();
    rep["left"] = chain_json(left_chain(ring));
    rep["right"] = chain_json(right_chain(ring));
    rep["strong"] = chain_json(strong_chain(ring));
    rep["generators"] = generator_count(ring);
  }
  run.emit(c, rep);
  return kExitPass;
}

int cmd_ybe(Runner& run, const Common& c, const std::string& path, std::uint64_t samples, std::uint64_t seed,
            const std::string& export_path) {
  const Brace b = Runner::brace_from(read_json_file(path));
  Runner::gate(b.shape(), c, "Yang-Baxter certification");
  const Report rep = certify_solution(b, {samples, seed, c.threads});
  if (!export_path.empty()) {
    if (!rep.passed()) throw PreconditionError("not exporting a solution that failed certification");
    std::ofstream f(export_path, std::ios::binary);
    if (!(f << export_solution(Solution(b, c.threads)).dump() << "\n")) throw FormatError("cannot write " + export_path);
  }
  run.emit(c, rep.to_json());
  return rep.passed() ? kExitPass : kExitValidation;
}

int cmd_enumerate(Runner& run, const Common& c, const std::string& path, std::uint64_t budget,
                  const std::string& report_path) {
  const EnumSpace space = enum_space_from_json(read_json_file(path));
  std::string lines;
  const EnumResult res = enumerate_valid(space, {budget, c.threads}, [&](std::uint64_t, const PreLieRing& ring) {
    lines += prelie_to_json(ring).dump() + "\n";
  });
  if (c.output.empty()) {
    run.out_ << lines;
  } else {
    std::ofstream f(c.output, std::ios::binary);
    if (!(f << lines)) throw FormatError("cannot write " + c.output);
  }
  Json rep;
  rep["schema"] = 1;
  rep["kind"] = "enumeration";
  rep["budgets"] = {{"budget", budget}};
  rep["candidates"] = res.candidates;
  rep["valid"] = res.valid;
  rep["rejected"] = {{"not_well_defined", res.not_well_defined},
                     {"not_prelie", res.not_prelie},
                     {"not_nilpotent", res.not_nilpotent}};
  rep["note"] = res.note;
  if (report_path.empty()) {
    run.err_ << res.note << "\n"
             << res.valid << " of " << res.candidates << " candidates valid\n";
  } else {
    write_json_file(report_path, rep);
  }
  return kExitPass;
}

int cmd_iso(Runner& run, const Common& c, const std::string& a, const std::string& b, std::uint64_t budget) {
  const PreLieRing ra = Runner::ring_from(read_json_file(a));
  const PreLieRing rb = Runner::ring_from(read_json_file(b));
  const IsoResult res = isomorphic(ra, rb, budget);
  Json rep;
  rep["schema"] = 1;
  rep["kind"] = "isomorphism";
  rep["budgets"] = {{"budget", budget}};
  rep["verdict"] = to_string(res.verdict);
  Json witness = Json::array();
  for (const auto& w : res.witness) witness.push_back(to_json(w));
  rep["witness"] = witness;
  rep["explored"] = res.explored;
  rep["reason"] = res.reason;
  run.emit(c, rep);
  return kExitPass;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Nilpotent pre-Lie rings of order p^4, their braces and Yang-Baxter solutions", "nilp"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand
  Common common;
  app.add_option("--threads", common.threads, "Worker threads (default: logical cores)")->check(CLI::NonNegativeNumber);
  app.add_flag("--slow", common.slow, "Allow whole-carrier work for p > 7");

  std::string input, input_b, direction = "to-brace", xi = "auto", range = "p-2", mode = "sampled", export_path,
                              report_path;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> samples, budget;
  bool strict = false;
  int family = 0, count = 1;
  Int p = 7;

  auto add_output = [&](CLI::App* sub) { sub->add_option("-o,--output", common.output, "Output file (default stdout)"); };

  auto* build_cmd = app.add_subcommand("build", "Validate a family spec and write its pre-Lie table");
  build_cmd->add_option("spec", input, "Family spec JSON")->required();
  build_cmd->add_flag("--item10-strict", strict, "Family 10: require p not dividing a..h");
  add_output(build_cmd);

  auto* sample_cmd = app.add_subcommand("sample", "Seeded valid family specs, one JSON document per line");
  sample_cmd->add_option("--family", family, "Family 1..10")->required();
  sample_cmd->add_option("--p", p, "Prime")->required();
  sample_cmd->add_option("--count", count, "Number of specs")->check(CLI::NonNegativeNumber);
  sample_cmd->add_option("--seed", seed, "Seed");
  add_output(sample_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "Check a pre-Lie table, family spec or brace table");
  verify_cmd->add_option("file", input, "Input JSON")->required();
  verify_cmd->add_option("--mode", mode, "sampled or exhaustive (brace inverses scanned for every p)");
  verify_cmd->add_option("--samples", samples, "Sampled triples (env NILP_SAMPLES, default 100000)");
  verify_cmd->add_option("--seed", seed, "Seed");
  verify_cmd->add_flag("--item10-strict", strict, "Family 10: require p not dividing a..h");
  add_output(verify_cmd);

  auto* flow_cmd = app.add_subcommand("flow", "Convert between pre-Lie tables and braces");
  flow_cmd->add_option("file", input, "Input JSON")->required();
  flow_cmd->add_option("--direction", direction, "to-brace or to-prelie");
  flow_cmd->add_option("--xi", xi, "Unit in the recovery sum: auto or an integer");
  flow_cmd->add_option("--inverse-range", range, "Upper index of the recovery sum: p-2 or p-1");
  add_output(flow_cmd);

  auto* chains_cmd = app.add_subcommand("chains", "Left, right and strong chain orders");
  chains_cmd->add_option("file", input, "Input JSON")->required();
  add_output(chains_cmd);

  auto* ybe_cmd = app.add_subcommand("ybe", "Certify the Yang-Baxter solution of a brace");
  ybe_cmd->add_option("file", input, "Brace, pre-Lie table or family spec")->required();
  ybe_cmd->add_option("--samples", samples, "Sampled braid triples (env NILP_SAMPLES, default 100000)");
  ybe_cmd->add_option("--seed", seed, "Seed");
  ybe_cmd->add_option("--export", export_path, "Write the solution as a JSON pair map (p <= 7)");
  add_output(ybe_cmd);

  auto* enum_cmd = app.add_subcommand("enumerate", "Valid tables of an enumeration space, as JSON lines");
  enum_cmd->add_option("space", input, "Enumeration space JSON")->required();
  enum_cmd->add_option("--budget", budget, "Candidate budget (env NILP_ENUM_BUDGET, default 1e9)");
  enum_cmd->add_option("--report", report_path, "Write a summary report here");
  add_output(enum_cmd);

  auto* iso_cmd = app.add_subcommand("iso", "Bounded isomorphism search between two pre-Lie rings");
  iso_cmd->add_option("a", input, "First ring")->required();
  iso_cmd->add_option("b", input_b, "Second ring")->required();
  iso_cmd->add_option("--budget", budget, "Candidate budget (env NILP_ISO_BUDGET, default 1e7)");
  add_output(iso_cmd);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitValidation;
  }

  Runner runner(out, err);
  try {
    const std::uint64_t n_samples = samples ? *samples : env_or("NILP_SAMPLES", 100000);
    if (build_cmd->parsed()) return cmd_build(runner, common, input, strict);
    if (sample_cmd->parsed()) return cmd_sample(runner, common, family, p, count, seed);
    if (verify_cmd->parsed()) return cmd_verify(runner, common, input, mode, n_samples, seed, strict);
    if (flow_cmd->parsed()) return cmd_flow(runner, common, input, direction, xi, range);
    if (chains_cmd->parsed()) return cmd_chains(runner, common, input);
    if (ybe_cmd->parsed()) return cmd_ybe(runner, common, input, n_samples, seed, export_path);
    if (enum_cmd->parsed()) {
      return cmd_enumerate(runner, common, input, budget ? *budget : env_or("NILP_ENUM_BUDGET", kDefaultEnumBudget),
                           report_path);
    }
    if (iso_cmd->parsed()) {
      return cmd_iso(runner, common, input, input_b, budget ? *budget : env_or("NILP_ISO_BUDGET", kDefaultIsoBudget));
    }
  } catch (const FormatError& e) {
    err << "error: " << e.what() << "\n";
    return kExitFormat;
  } catch (const RegimeError& e) {
    err << "regime: " << e.what() << "\n";
    return kExitRegime;
  } catch (const NotNilpotentError& e) {
    err << "regime: " << e.what() << "\n";
    return kExitRegime;
  } catch (const InvariantError& e) {
    err << "internal: " << e.what() << "\n";
    return kExitInternal;
  } catch (const ArithmeticError& e) {
    err << "internal: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::invalid_argument& e) {
    // ShapeError, PreconditionError, ConstraintError
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "internal: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitValidation;
}

}  // namespace nilp
