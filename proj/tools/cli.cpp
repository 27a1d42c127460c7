#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "erank/charp_collapse.hpp"
#include "erank/element_syntax.hpp"
#include "erank/equivalence.hpp"
#include "erank/errors.hpp"
#include "erank/geometry.hpp"
#include "erank/json_io.hpp"
#include "erank/normal_forms.hpp"
#include "erank/pairing.hpp"
#include "erank/parser.hpp"
#include "erank/ratfunc_eval.hpp"

namespace erank::cli {

namespace {

class UsageError : public Error {
public:
  using Error::Error;
};

// Formulas above this many term nodes are summarized instead of printed.
constexpr std::size_t print_limit = 1000000;

struct Config {
  std::string format;
  std::string profile = "Q";
  std::string formula;
  std::string file;
  bool order = false;
  bool canonical = false;
  std::string pipeline;
  std::string rootless;
  std::size_t node_limit = 100000;
  std::uint64_t max_states = 0;

  // charp
  std::uint32_t p = 2;
  std::size_t n = 1;
  unsigned k = 1;
  std::string mode = "ufd";
  unsigned r = 1;
  std::string witness;
  unsigned bound = 3;
  std::uint64_t samples = 10000;
  std::uint64_t seed = 42;
  bool mutate = false;
  unsigned sweep = 0;

  // eval / equiv
  std::vector<std::string> assign;
  std::string vars;
  bool table = false;
  unsigned search_bound = 2;
  std::string f1, f2;
  std::string battery = "default";

  // geom
  std::string system;
  std::string point;
  unsigned max_k = 0;
  bool list = false;

  // pair
  std::string domain = "nat";
  std::string values;
  std::string code;
  std::size_t arity = 2;
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos)
      out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw UsageError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t formula_nodes(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
  case K::equal:
  case K::not_equal:
  case K::less:
    return f.lhs_term().size() + f.rhs_term().size() + 1;
  case K::conj:
  case K::disj:
    return formula_nodes(f.left()) + formula_nodes(f.right()) + 1;
  case K::negation:
  case K::exists:
    return formula_nodes(f.body()) + 1;
  default:
    return 1;
  }
}

std::string printable(const Formula& f) {
  const std::size_t nodes = formula_nodes(f);
  if (nodes > print_limit)
    return "<formula of " + std::to_string(nodes) + " nodes not printed>";
  return format_formula(f);
}

std::string join(const std::vector<std::string>& xs, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i)
    out += (i ? sep : "") + xs[i];
  return out;
}

// Sets ERANK_MAX_STATES for one command, restoring the previous value after.
class StateCapOverride {
public:
  explicit StateCapOverride(std::uint64_t cap) : active_(cap > 0) {
    if (!active_)
      return;
    if (const char* old = std::getenv("ERANK_MAX_STATES"))
      previous_ = old;
    setenv("ERANK_MAX_STATES", std::to_string(cap).c_str(), 1);
  }
  ~StateCapOverride() {
    if (!active_)
      return;
    if (previous_)
      setenv("ERANK_MAX_STATES", previous_->c_str(), 1);
    else
      unsetenv("ERANK_MAX_STATES");
  }
  StateCapOverride(const StateCapOverride&) = delete;
  StateCapOverride& operator=(const StateCapOverride&) = delete;

private:
  bool active_;
  std::optional<std::string> previous_;
};

class Runner {
public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(const std::vector<std::string>& args) {
    CLI::App app{"Existential rank toolkit", "erank"};
    app.require_subcommand(1);
    // global options may also follow the subcommand
    app.fallthrough();
    app.option_defaults()->always_capture_default();
    app.add_option("--format", c_.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--max-states", c_.max_states, "Enumeration cap (overrides ERANK_MAX_STATES)");
    std::function<int()> action;
    define_commands(app, action);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      app.parse(reversed);
    } catch (const CLI::ParseError& e) {
      int code = app.exit(e, out_, err_);
      return code == 0 ? ok : usage;
    }
    StateCapOverride cap_guard(c_.max_states);
    try {
      return action();
    } catch (const UnsupportedProfileError& e) {
      err_ << "erank: unsupported: " << e.what() << "\n";
      return unsupported;
    } catch (const CapExceededError& e) {
      err_ << "erank: cap exceeded: " << e.what() << "\n";
      return unsupported;
    } catch (const erank::ParseError& e) {
      err_ << "erank: parse error at " << e.what() << "\n";
      return usage;
    } catch (const nlohmann::json::exception& e) {
      err_ << "erank: bad JSON: " << e.what() << "\n";
      return usage;
    } catch (const Error& e) {
      err_ << "erank: " << e.what() << "\n";
      return usage;
    }
  }

private:
  bool json(const char* fallback = "text") const { return (c_.format.empty() ? fallback : c_.format) == "json"; }

  void print(const Json& j) { out_ << j.dump(2) << "\n"; }

  void add_formula_input(CLI::App* cmd) {
    cmd->add_option("--formula", c_.formula, "Formula text");
    cmd->add_option("--file", c_.file, "Read the formula from a file");
    cmd->add_flag("--order", c_.order, "Allow '<' atoms");
  }

  Formula input_formula() const {
    std::string text;
    if (!c_.file.empty() && !c_.formula.empty())
      throw UsageError("give --formula or --file, not both");
    if (!c_.file.empty())
      text = read_file(c_.file);
    else if (!c_.formula.empty())
      text = c_.formula;
    else
      throw UsageError("a formula is required (--formula or --file)");
    bool order = c_.order;
    if (!order) {
      try {
        order = FieldProfile::parse(c_.profile).has_order;
      } catch (const Error&) {
      }
    }
    return parse_formula(text, ParseOptions{order});
  }

  FieldProfile profile() const {
    FieldProfile prof = FieldProfile::parse(c_.profile);
    if (!c_.rootless.empty()) {
      UnivariatePolynomial g;
      for (const auto& coef : split_list(c_.rootless))
        g.coefficients.push_back(parse_term(coef));
      prof.rootless = g;
    }
    return prof;
  }

  GaloisFieldPtr finite_field() const {
    FieldProfile prof = profile();
    if (prof.kind != FieldKind::finite)
      throw UnsupportedProfileError("this command needs a finite profile F<q>, got " + prof.name());
    return prof.field;
  }

  CollapseConfig collapse_config() const {
    CollapseConfig cfg;
    cfg.p = c_.p;
    cfg.n = c_.n;
    cfg.k = c_.k;
    if (c_.mode == "ufd")
      cfg.mode = CollapseMode::ufd_p_divisible_units;
    else if (c_.mode == "general")
      cfg.mode = CollapseMode::general;
    else
      throw UsageError("--mode must be ufd or general");
    cfg.r = c_.r;
    cfg.drop_x_term = c_.mutate;
    cfg.validate();
    return cfg;
  }

  static Json config_json(const CollapseConfig& cfg) {
    return Json{{"p", cfg.p},
                {"n", cfg.n},
                {"k", cfg.k},
                {"mode", cfg.mode == CollapseMode::general ? "general" : "ufd"},
                {"r", cfg.r},
                {"mutated", cfg.drop_x_term}};
  }

  void define_commands(CLI::App& app, std::function<int()>& action) {
    // parse
    auto* parse = app.add_subcommand("parse", "Parse a formula and show its tree");
    add_formula_input(parse);
    parse->callback([&] { action = [this] { return cmd_parse(); }; });

    auto* fmt = app.add_subcommand("fmt", "Pretty-print a formula");
    add_formula_input(fmt);
    fmt->add_flag("--canonical", c_.canonical, "Rename binders to y1, y2, ...");
    fmt->callback([&] { action = [this] { return cmd_fmt(); }; });

    auto* rank = app.add_subcommand("rank", "Quantifier-count upper bounds");
    add_formula_input(rank);
    rank->add_option("--profile", c_.profile, "Q, F<q>, F<q>t, RCF or char<p>");
    rank->add_option("--pipeline", c_.pipeline, "Comma-separated pass ids");
    rank->add_option("--rootless", c_.rootless, "Coefficients of a rootless g, lowest first");
    rank->add_option("--node-limit", c_.node_limit, "DNF node limit");
    rank->callback([&] { action = [this] { return cmd_rank(); }; });

    auto* transform = app.add_subcommand("transform", "Run passes and print the result");
    add_formula_input(transform);
    transform->add_option("--profile", c_.profile, "Field profile");
    transform->add_option("--pass,--pipeline", c_.pipeline, "Comma-separated pass ids")->required();
    transform->add_option("--rootless", c_.rootless, "Coefficients of a rootless g, lowest first");
    transform->add_option("--node-limit", c_.node_limit, "DNF node limit");
    transform->callback([&] { action = [this] { return cmd_transform(); }; });

    auto* pic = app.add_subcommand("pi-collapse", "One-quantifier formula for tuples of p^k-th powers");
    add_collapse_options(pic);
    pic->add_option("--witness", c_.witness, "Comma-separated tuple in F_p(t)");
    pic->add_option("--pipeline", c_.pipeline, "Pass ids for the attached report");
    pic->callback([&] { action = [this] { return cmd_pi_collapse(); }; });

    auto* cc = app.add_subcommand("collapse-check", "Completeness and sampled soundness over F_p(t)");
    add_collapse_options(cc);
    cc->add_option("--bound", c_.bound, "Degree bound for completeness");
    cc->add_option("--samples", c_.samples, "Soundness samples");
    cc->add_option("--seed", c_.seed, "Sampling seed");
    cc->add_flag("--mutate", c_.mutate, "Drop the +X term of f (control run)");
    cc->add_option("--sweep", c_.sweep, "Also sweep all tuples up to this degree");
    cc->callback([&] { action = [this] { return cmd_collapse_check(); }; });

    auto* eval = app.add_subcommand("eval", "Evaluate a formula over a profile");
    add_formula_input(eval);
    eval->add_option("--profile", c_.profile, "Field profile");
    eval->add_option("--assign", c_.assign, "Assignment such as x=4,y=t (repeatable)");
    eval->add_option("--vars", c_.vars, "Variable order for --table");
    eval->add_flag("--table", c_.table, "Print the definable set");
    eval->add_option("--bound", c_.search_bound, "Witness degree bound over F_q(t)");
    eval->callback([&] { action = [this] { return cmd_eval(); }; });

    auto* equiv = app.add_subcommand("equiv", "Compare two formulas on a battery of finite fields");
    equiv->add_option("--f1", c_.f1, "First formula")->required();
    equiv->add_option("--f2", c_.f2, "Second formula")->required();
    equiv->add_option("--battery", c_.battery, "default, or a list such as F5,F7");
    equiv->callback([&] { action = [this] { return cmd_equiv(); }; });

    auto* geom = app.add_subcommand("geom", "Polynomial systems and projections");
    geom->require_subcommand(1);
    auto geo_input = [this](CLI::App* cmd) {
      add_formula_input(cmd);
      cmd->add_option("--system", c_.system, "System JSON file");
    };
    auto* to_sys = geom->add_subcommand("to-system", "Formula to system JSON");
    add_formula_input(to_sys);
    to_sys->callback([&] { action = [this] { return cmd_to_system(); }; });
    auto* from_sys = geom->add_subcommand("from-system", "System JSON to formula");
    from_sys->add_option("--system", c_.system, "System JSON file")->required();
    from_sys->callback([&] { action = [this] { return cmd_from_system(); }; });
    auto* image = geom->add_subcommand("image", "Image of the projection over F_q");
    geo_input(image);
    image->add_option("--profile", c_.profile, "Finite profile")->required();
    image->callback([&] { action = [this] { return cmd_image(); }; });
    auto* fibre = geom->add_subcommand("fibre", "Fibre point counts over F_{q^k}");
    geo_input(fibre);
    fibre->add_option("--profile", c_.profile, "Finite profile")->required();
    fibre->add_option("--point", c_.point, "Base point, comma-separated")->required();
    fibre->add_option("--max-k", c_.max_k, "Largest extension degree");
    fibre->add_flag("--list", c_.list, "List the points");
    fibre->callback([&] { action = [this] { return cmd_fibre(); }; });
    auto* fdim = geom->add_subcommand("fibre-dim", "Heuristic fibre dimension from point counts");
    geo_input(fdim);
    fdim->add_option("--profile", c_.profile, "Finite profile")->required();
    fdim->add_option("--point", c_.point, "Base point, comma-separated")->required();
    fdim->add_option("--max-k", c_.max_k, "Largest extension degree");
    fdim->callback([&] { action = [this] { return cmd_fibre_dim(); }; });

    auto* pair = app.add_subcommand("pair", "Pairing functions");
    pair->require_subcommand(1);
    auto* enc = pair->add_subcommand("encode", "Encode a tuple");
    enc->add_option("--domain", c_.domain, "nat or charp")->check(CLI::IsMember({"nat", "charp"}));
    enc->add_option("--p", c_.p, "Characteristic for charp");
    enc->add_option("--values", c_.values, "Comma-separated tuple")->required();
    enc->callback([&] { action = [this] { return cmd_pair_encode(); }; });
    auto* dec = pair->add_subcommand("decode", "Decode a code into an n-tuple");
    dec->add_option("--domain", c_.domain, "nat or charp")->check(CLI::IsMember({"nat", "charp"}));
    dec->add_option("--p", c_.p, "Characteristic for charp");
    dec->add_option("--code", c_.code, "Code to decode")->required();
    dec->add_option("--n", c_.arity, "Tuple length");
    dec->callback([&] { action = [this] { return cmd_pair_decode(); }; });
  }

  void add_collapse_options(CLI::App* cmd) {
    cmd->add_option("--p", c_.p, "Characteristic");
    cmd->add_option("--n", c_.n, "Tuple length");
    cmd->add_option("--k", c_.k, "Exponent p^k");
    cmd->add_option("--mode", c_.mode, "ufd or general");
    cmd->add_option("--r", c_.r, "g = X^r + 1 in general mode");
  }

  // ---- formula commands -------------------------------------------------

  int cmd_parse() {
    Formula f = input_formula();
    if (json()) {
      print(Json{{"kind", "parse"},
                 {"formula", format_formula(f)},
                 {"tree", format_tree(f)},
                 {"free_variables", free_variables(f)},
                 {"quantifiers", raw_quantifier_count(f)},
                 {"existential", is_existential(f)},
                 {"quantifier_free", is_quantifier_free(f)}});
    } else {
      out_ << format_tree(f) << "\n";
      out_ << "free variables: " << join(free_variables(f), " ") << "\n";
      out_ << "quantifiers: " << raw_quantifier_count(f) << "\n";
      out_ << "existential: " << (is_existential(f) ? "yes" : "no") << "\n";
    }
    return ok;
  }

  int cmd_fmt() {
    Formula f = input_formula();
    if (c_.canonical)
      f = canonical_binders(f);
    if (json())
      print(Json{{"kind", "fmt"}, {"formula", format_formula(f)}});
    else
      out_ << format_formula(f) << "\n";
    return ok;
  }

  std::vector<std::string> pipeline_for(const Formula& f, const FieldProfile& prof) const {
    return c_.pipeline.empty() ? default_pipeline(f, prof) : split_list(c_.pipeline);
  }

  void print_report_text(const RankReport& r) {
    out_ << "profile: " << r.profile << "\n";
    out_ << "input: " << printable(r.input) << "\n";
    out_ << "erk_upper: " << r.erk_upper << "\n";
    out_ << "perk_upper: " << r.perk_upper << "\n";
    out_ << "efd_upper: " << r.efd_upper << "\n";
    for (const auto& a : r.assumptions)
      out_ << "assumption: " << a << "\n";
    for (const auto& e : r.pass_trace)
      out_ << "pass " << e.pass << ": " << e.before << " -> " << e.after << " [" << e.scope << "]\n";
    out_ << "output: " << printable(r.output) << "\n";
    for (const auto& n : r.notes)
      out_ << "note: " << n << "\n";
  }

  int cmd_rank() {
    FieldProfile prof = profile();
    Formula f = input_formula();
    auto r = rank_report(f, prof, pipeline_for(f, prof), PositivePrimitiveOptions{c_.node_limit});
    if (json("json"))
      print(to_json(r));
    else
      print_report_text(r);
    return ok;
  }

  int cmd_transform() {
    FieldProfile prof = profile();
    Formula f = input_formula();
    auto passes = split_list(c_.pipeline);
    auto r = rank_report(f, prof, passes, PositivePrimitiveOptions{c_.node_limit});
    if (json()) {
      Json trace = Json::array();
      for (const auto& e : r.pass_trace)
        trace.push_back({{"pass", e.pass}, {"before", e.before}, {"after", e.after}, {"scope", e.scope}});
      print(Json{{"kind", "transform"},
                 {"profile", r.profile},
                 {"pipeline", passes},
                 {"input", format_formula(f)},
                 {"output", printable(r.output)},
                 {"quantifiers", raw_quantifier_count(r.output)},
                 {"pass_trace", trace}});
    } else {
      out_ << printable(r.output) << "\n";
    }
    return ok;
  }

  // ---- characteristic p -------------------------------------------------

  int cmd_pi_collapse() {
    CollapseConfig cfg = collapse_config();
    PrenexFormula phi = fin_gen_pipeline(cfg);
    Formula f = phi.to_formula();
    FieldProfile prof = FieldProfile::rational_function(cfg.p).with_collapse(cfg.mode, cfg.r);
    const std::size_t nodes = formula_nodes(f);
    std::optional<RankReport> report;
    if (nodes <= print_limit) {
      std::vector<std::string> passes = c_.pipeline.empty() ? std::vector<std::string>{"prenex", "merge"} : split_list(c_.pipeline);
      report = rank_report(f, prof, passes, PositivePrimitiveOptions{c_.node_limit});
    }
    Json witness = nullptr;
    std::string witness_text;
    int code = ok;
    if (!c_.witness.empty()) {
      RatFuncField field(GaloisField::make_order(cfg.p));
      auto parts = split_elements(c_.witness);
      if (parts.size() != cfg.n)
        throw UsageError("--witness needs " + std::to_string(cfg.n) + " elements, got " + std::to_string(parts.size()));
      std::vector<RatFunc> xs;
      for (const auto& s : parts)
        xs.push_back(parse_element(field, s));
      auto y = synth_witness(xs, cfg, field);
      Json inputs = Json::object();
      auto names = cfg.free_names();
      for (std::size_t i = 0; i < xs.size(); ++i)
        inputs[names[i]] = field.format(xs[i]);
      if (y) {
        std::map<std::string, RatFunc> a;
        for (std::size_t i = 0; i < xs.size(); ++i)
          a[names[i]] = xs[i];
        a[cfg.witness_var] = *y;
        bool holds_now = holds(field, phi.matrix, a);
        witness = Json{{"inputs", inputs}, {cfg.witness_var, field.format(*y)}, {"matrix", holds_now}};
        witness_text = "witness: " + cfg.witness_var + " = " + field.format(*y) + "\nmatrix: " + (holds_now ? "true" : "false") + "\n";
        if (!holds_now)
          code = refuted;
      } else {
        witness = Json{{"inputs", inputs}, {cfg.witness_var, nullptr}, {"matrix", nullptr},
                       {"reason", "some component is not a p^k-th power"}};
        witness_text = "witness: none (some component is not a p^k-th power)\n";
        code = refuted;
      }
    }
    if (json()) {
      Json j{{"kind", "pi_collapse"},
             {"config", config_json(cfg)},
             {"profile", prof.name()},
             {"quantifiers", phi.count()},
             {"formula_nodes", nodes},
             {"formula", nodes <= print_limit ? Json(format_formula(f)) : Json(nullptr)},
             {"rank_report", report ? to_json(*report) : Json(nullptr)},
             {"witness", witness}};
      print(j);
    } else {
      out_ << "formula: " << printable(f) << "\n";
      out_ << "quantifiers: " << phi.count() << "\n";
      if (report) {
        out_ << "erk_upper: " << report->erk_upper << "\n";
        out_ << "perk_upper: " << report->perk_upper << "\n";
        out_ << "efd_upper: " << report->efd_upper << "\n";
      }
      out_ << witness_text;
    }
    return code;
  }

  int cmd_collapse_check() {
    CollapseConfig cfg = collapse_config();
    RatFuncField field(GaloisField::make_order(cfg.p));
    CollapseCheckOptions opt;
    opt.degree_bound = c_.bound;
    opt.samples = c_.samples;
    opt.seed = c_.seed;
    auto report = check_collapse_semantics(cfg, field, opt);
    std::optional<EquivReport> sweep;
    if (c_.sweep > 0)
      sweep = sweep_collapse_soundness(cfg, field, c_.sweep);
    bool bad = report.verdict == Verdict::refuted || (sweep && sweep->verdict == Verdict::refuted);
    if (json("json")) {
      Json j = to_json(report);
      j["config"] = config_json(cfg);
      j["sweep"] = sweep ? to_json(*sweep) : Json(nullptr);
      print(j);
    } else {
      out_ << "seed: " << c_.seed << "\n";
      out_ << "verdict: " << to_string(report.verdict) << "\n";
      out_ << "tuples checked: " << report.stats.tuples_checked << "\n";
      out_ << "completeness failures: " << report.stats.completeness_failures << "\n";
      out_ << "samples accepted: " << report.stats.samples_accepted << " of " << report.stats.sample_attempts << "\n";
      out_ << "soundness violations: " << report.stats.soundness_violations << "\n";
      if (sweep)
        out_ << "sweep violations: " << sweep->stats.soundness_violations << " among " << sweep->stats.samples_accepted
             << " accepted tuples\n";
      const auto& cx = report.counterexample ? report.counterexample : (sweep ? sweep->counterexample : std::nullopt);
      if (cx) {
        out_ << "counterexample:";
        for (const auto& [k, v] : cx->assignment)
          out_ << " " << k << "=" << v;
        out_ << " (" << cx->reason << ")\n";
      }
    }
    return bad ? refuted : ok;
  }

  // ---- evaluation -------------------------------------------------------

  template <class F>
  std::map<std::string, typename F::Elem> parse_assignment(const F& field, const std::string& text) const {
    std::map<std::string, typename F::Elem> a;
    for (const auto& part : split_elements(text)) {
      auto eq = part.find('=');
      if (eq == std::string::npos)
        throw UsageError("assignment '" + part + "' needs the form var=value");
      std::string name = part.substr(0, eq);
      name.erase(0, name.find_first_not_of(" "));
      name.erase(name.find_last_not_of(" ") + 1);
      a[name] = parse_element(field, part.substr(eq + 1));
    }
    return a;
  }

  template <class F>
  static std::string assignment_text(const F& field, const std::map<std::string, typename F::Elem>& a) {
    std::string s;
    for (const auto& [k, v] : a)
      s += (s.empty() ? "" : ", ") + k + "=" + field.format(v);
    return s;
  }

  template <class F>
  static Json assignment_json(const F& field, const std::map<std::string, typename F::Elem>& a) {
    Json j = Json::object();
    for (const auto& [k, v] : a)
      j[k] = field.format(v);
    return j;
  }

  void print_set(const DefinableSet& s, const GaloisField& field) {
    if (json()) {
      print(to_json(s, field));
      return;
    }
    out_ << "profile: " << s.profile << "\n";
    out_ << "vars: " << join(s.vars, " ") << "\n";
    out_ << "size: " << s.tuples.size() << "\n";
    for (const auto& t : s.tuples) {
      std::vector<std::string> parts;
      for (auto v : t)
        parts.push_back(field.format(v));
      out_ << (t.size() == 1 ? parts[0] : "(" + join(parts, ", ") + ")") << "\n";
    }
  }

  int cmd_eval() {
    FieldProfile prof = profile();
    Formula f = input_formula();
    if (prof.kind == FieldKind::finite) {
      const GaloisField& field = *prof.field;
      if (c_.assign.empty()) {
        std::optional<std::vector<std::string>> vars;
        if (!c_.vars.empty())
          vars = split_list(c_.vars);
        print_set(definable_set(f, prof.field, vars), field);
        return ok;
      }
      Json rows = Json::array();
      for (const auto& text : c_.assign) {
        auto a = parse_assignment(field, text);
        bool v = eval_formula_finite(f, a, prof.field);
        rows.push_back({{"assignment", assignment_json(field, a)}, {"value", v ? "true" : "false"}});
        if (!json())
          out_ << assignment_text(field, a) << ": " << (v ? "true" : "false") << "\n";
      }
      if (json())
        print(Json{{"kind", "evaluation"}, {"profile", prof.name()}, {"rows", rows}});
      return ok;
    }
    if (c_.assign.empty())
      throw UnsupportedProfileError("definable sets can only be enumerated over finite profiles; pass --assign");
    if (prof.kind == FieldKind::rational_function) {
      RatFuncField field(prof.field);
      Json rows = Json::array();
      for (const auto& text : c_.assign) {
        auto a = parse_assignment(field, text);
        Json row{{"assignment", assignment_json(field, a)}};
        std::string line = assignment_text(field, a) + ": ";
        if (is_quantifier_free(f)) {
          bool v = holds(field, f, a);
          row["value"] = v ? "true" : "false";
          line += v ? "true" : "false";
        } else {
          auto res = eval_bounded_ratfunc(f, a, field, c_.search_bound);
          row["value"] = res.verdict == BoundedVerdict::holds ? "true" : to_string(res.verdict);
          row["bound"] = c_.search_bound;
          row["candidates_checked"] = res.candidates_checked;
          if (res.verdict == BoundedVerdict::holds) {
            row["witness"] = assignment_json(field, res.witness);
            line += "true (witness " + assignment_text(field, res.witness) + ")";
          } else {
            line += std::string(to_string(res.verdict)) + " (bound " + std::to_string(c_.search_bound) + ")";
          }
        }
        rows.push_back(row);
        if (!json())
          out_ << line << "\n";
      }
      if (json())
        print(Json{{"kind", "evaluation"}, {"profile", prof.name()}, {"rows", rows}});
      return ok;
    }
    if (prof.kind == FieldKind::rationals) {
      if (!is_quantifier_free(f))
        throw UnsupportedProfileError("over Q only quantifier-free formulas are evaluated");
      RationalField field;
      Json rows = Json::array();
      for (const auto& text : c_.assign) {
        auto a = parse_assignment(field, text);
        bool v = holds(field, f, a);
        rows.push_back({{"assignment", assignment_json(field, a)}, {"value", v ? "true" : "false"}});
        if (!json())
          out_ << assignment_text(field, a) << ": " << (v ? "true" : "false") << "\n";
      }
      if (json())
        print(Json{{"kind", "evaluation"}, {"profile", prof.name()}, {"rows", rows}});
      return ok;
    }
    throw UnsupportedProfileError("profile " + prof.name() + " supports symbolic passes only");
  }

  int cmd_equiv() {
    Formula f1 = parse_formula(c_.f1), f2 = parse_formula(c_.f2);
    std::vector<GaloisFieldPtr> bat;
    if (c_.battery == "default") {
      bat = default_battery();
    } else {
      for (const auto& name : split_list(c_.battery)) {
        FieldProfile prof = FieldProfile::parse(name);
        if (prof.kind != FieldKind::finite)
          throw UnsupportedProfileError("battery members must be finite fields, got " + name);
        bat.push_back(prof.field);
      }
    }
    auto r = refute_equivalence(f1, f2, bat);
    if (json("json")) {
      print(to_json(r));
    } else {
      out_ << "verdict: " << to_string(r.verdict) << "\n";
      out_ << "battery: " << join(r.battery, " ") << "\n";
      if (r.counterexample) {
        out_ << "counterexample over " << r.counterexample->profile << ":";
        for (const auto& [k, v] : r.counterexample->assignment)
          out_ << " " << k << "=" << v;
        out_ << " (f1 " << (*r.counterexample->lhs_value ? "true" : "false") << ", f2 "
             << (*r.counterexample->rhs_value ? "true" : "false") << ")\n";
      }
      for (const auto& n : r.notes)
        out_ << "note: " << n << "\n";
    }
    return r.verdict == Verdict::refuted ? refuted : ok;
  }

  // ---- geometry ---------------------------------------------------------

  VarietyPresentation input_system() const {
    if (!c_.system.empty()) {
      if (!c_.formula.empty() || !c_.file.empty())
        throw UsageError("give --system or a formula, not both");
      return system_from_json(Json::parse(read_file(c_.system)));
    }
    PrenexFormula pp = to_positive_primitive(merge_pass(to_prenex_existential(input_formula())));
    return formula_to_system(pp);
  }

  void print_system(const VarietyPresentation& vp) {
    if (json("json")) {
      print(to_json(vp));
      return;
    }
    out_ << "x_vars: " << join(vp.x_vars, " ") << "\n";
    out_ << "y_vars: " << join(vp.y_vars, " ") << "\n";
    for (const auto& g : vp.generators)
      out_ << format_term(g) << " = 0\n";
  }

  int cmd_to_system() {
    print_system(input_system());
    return ok;
  }

  int cmd_from_system() {
    auto f = system_to_formula(input_system()).to_formula();
    if (json())
      print(Json{{"kind", "fmt"}, {"formula", format_formula(f)}});
    else
      out_ << format_formula(f) << "\n";
    return ok;
  }

  int cmd_image() {
    auto field = finite_field();
    print_set(image_over_finite(input_system(), field), *field);
    return ok;
  }

  std::vector<GaloisField::Elem> base_point(const GaloisField& field) const {
    std::vector<GaloisField::Elem> out;
    for (const auto& s : split_elements(c_.point))
      out.push_back(parse_element(field, s));
    return out;
  }

  int cmd_fibre() {
    auto field = finite_field();
    auto vp = input_system();
    auto x0 = base_point(*field);
    const unsigned max_k = c_.max_k == 0 ? 1 : c_.max_k;
    Json levels = Json::array();
    for (unsigned k = 1; k <= max_k; ++k) {
      Json level{{"k", k}};
      if (c_.list) {
        auto pts = fibre_points(vp, x0, field, k);
        Json list = Json::array();
        for (const auto& pt : pts.points) {
          Json row = Json::array();
          for (auto v : pt)
            row.push_back(pts.extension->format(v));
          list.push_back(row);
        }
        level["extension"] = pts.extension->name();
        level["count"] = pts.points.size();
        level["points"] = list;
        if (!json()) {
          out_ << "k=" << k << " (" << pts.extension->name() << "): " << pts.points.size() << " points\n";
          for (const auto& row : list) {
            std::vector<std::string> parts;
            for (const auto& v : row)
              parts.push_back(v.get<std::string>());
            out_ << "  (" << join(parts, ", ") << ")\n";
          }
        }
      } else {
        auto n = fibre_count(vp, x0, field, k);
        level["count"] = n;
        if (!json())
          out_ << "k=" << k << ": " << n << " points\n";
      }
      levels.push_back(level);
    }
    if (json())
      print(Json{{"kind", "fibre"}, {"profile", field->name()}, {"point", split_elements(c_.point)}, {"y_vars", vp.y_vars}, {"levels", levels}});
    return ok;
  }

  int cmd_fibre_dim() {
    auto field = finite_field();
    auto vp = input_system();
    auto est = fibre_dim_estimate(vp, base_point(*field), field, c_.max_k == 0 ? 4 : c_.max_k);
    if (json()) {
      Json j = to_json(est);
      j["profile"] = field->name();
      j["point"] = split_elements(c_.point);
      print(j);
    } else {
      out_ << "HEURISTIC fibre dimension estimate\n";
      std::vector<std::string> counts;
      for (auto n : est.counts)
        counts.push_back(std::to_string(n));
      out_ << "counts: " << join(counts, " ") << "\n";
      char slope[32];
      std::snprintf(slope, sizeof slope, "%.4f", est.slope);
      out_ << "slope: " << slope << "\n";
      if (est.exact)
        out_ << "estimated dimension: " << est.estimated_dim << "\n";
      else
        out_ << "estimated dimension: between " << est.range_low << " and " << est.range_high << "\n";
    }
    return ok;
  }

  // ---- pairing ----------------------------------------------------------

  static std::uint64_t parse_nat(const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw UsageError("'" + s + "' is not a natural number");
    try {
      return std::stoull(s);
    } catch (const std::out_of_range&) {
      throw UsageError("'" + s + "' does not fit in 64 bits");
    }
  }

  RatFuncField charp_field() const {
    if (!is_prime(c_.p))
      throw UsageError("--p must be prime");
    return RatFuncField(GaloisField::make_order(c_.p));
  }

  int cmd_pair_encode() {
    auto parts = split_elements(c_.values);
    if (parts.empty())
      throw UsageError("--values is empty");
    std::string code;
    if (c_.domain == "nat") {
      std::vector<std::uint64_t> xs;
      for (const auto& s : parts)
        xs.push_back(parse_nat(s));
      code = std::to_string(tuple_encode<std::uint64_t>(xs, encode_pair_nat));
    } else {
      RatFuncField field = charp_field();
      std::vector<RatFunc> xs;
      for (const auto& s : parts)
        xs.push_back(parse_element(field, s));
      code = field.format(tuple_encode<RatFunc>(
          xs, [&](const RatFunc& a, const RatFunc& b) { return encode_pair_charp(field, a, b); }));
    }
    if (json())
      print(Json{{"kind", "pair_encode"}, {"domain", c_.domain}, {"values", parts}, {"code", code}});
    else
      out_ << code << "\n";
    return ok;
  }

  int cmd_pair_decode() {
    if (c_.arity == 0)
      throw UsageError("--n must be positive");
    std::optional<std::vector<std::string>> values;
    if (c_.domain == "nat") {
      auto xs = tuple_decode<std::uint64_t>(parse_nat(c_.code), c_.arity, [](const std::uint64_t& z) {
        return std::optional<std::pair<std::uint64_t, std::uint64_t>>(decode_pair_nat(z));
      });
      values.emplace();
      for (auto x : *xs)
        values->push_back(std::to_string(x));
    } else {
      RatFuncField field = charp_field();
      auto xs = tuple_decode<RatFunc>(parse_element(field, c_.code), c_.arity,
                                      [&](const RatFunc& z) { return decode_pair_charp(field, z); });
      if (xs) {
        values.emplace();
        for (const auto& x : *xs)
          values->push_back(field.format(x));
      }
    }
    if (json())
      print(Json{{"kind", "pair_decode"},
                 {"domain", c_.domain},
                 {"code", c_.code},
                 {"n", c_.arity},
                 {"status", values ? "ok" : "not_a_code"},
                 {"values", values ? Json(*values) : Json(nullptr)}});
    else
      out_ << (values ? join(*values, ",") : std::string("not a code")) << "\n";
    return values ? ok : refuted;
  }

  std::ostream& out_;
  std::ostream& err_;
  Config c_;
};

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  return Runner(out, err).run(args);
}

} // namespace erank::cli
