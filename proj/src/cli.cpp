#include "thermoring/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "thermoring/entropy.hpp"
#include "thermoring/klspaces.hpp"
#include "thermoring/legendre.hpp"
#include "thermoring/numfmt.hpp"
#include "thermoring/rng.hpp"
#include "thermoring/successor.hpp"
#include "thermoring/trees.hpp"
#include "thermoring/tropical.hpp"
#include "thermoring/witt.hpp"

namespace thermoring {

namespace {

using json = nlohmann::ordered_json;

// JSON has no infinity literal; +inf values are emitted as the string "inf".
json jnum(double v) {
  if (v == kTropicalInf) return json("inf");
  return json(v);
}

double parse_value(const std::string& text, const char* what) {
  const char* begin = text.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    throw std::invalid_argument(std::string(what) + ": cannot parse number '" + text + "'");
  }
  return v;
}

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    out.push_back(parse_value(item, what));
  }
  if (out.empty()) {
    throw std::invalid_argument(std::string(what) + ": empty list");
  }
  return out;
}

void emit_json(const json& doc, std::ostream& out) { out << doc.dump(2) << '\n'; }

// Writes through `write` to the path, or to `out` when path is "-".
void with_output(const std::string& path, std::ostream& out,
                 const std::function<void(std::ostream&)>& write) {
  if (path == "-") {
    write(out);
    return;
  }
  std::ofstream file(path);
  if (!file) throw std::invalid_argument("cannot open output file '" + path + "'");
  write(file);
}

WittContext make_context(const std::string& measure_spec, double T,
                         std::optional<double> deform) {
  return WittContext(parse_measure(measure_spec), T, SolverOptions{}, deform);
}

int cmd_entropy(const std::string& measure_spec, std::optional<double> p,
                const std::optional<std::string>& probs_text, std::ostream& out) {
  Measure m = parse_measure(measure_spec);
  json inputs = {{"measure", measure_to_string(m)}};
  double value = 0.0;
  if (p && probs_text) {
    throw std::invalid_argument("entropy: give either --p or --probs, not both");
  }
  if (p) {
    inputs["p"] = jnum(*p);
    value = entropy2(m, *p);
  } else if (probs_text) {
    std::vector<double> probs = parse_list(*probs_text, "--probs");
    json jp = json::array();
    for (double q : probs) jp.push_back(jnum(q));
    inputs["probs"] = jp;
    value = entropy_chain(m, probs);
  } else {
    throw std::invalid_argument("entropy: need --p or --probs");
  }
  json doc = {{"inputs", inputs},
              {"result", {{"entropy", jnum(value)}, {"max_entropy", jnum(max_entropy(m))}}},
              {"defects", json::object()},
              {"tolerances", json::object()}};
  emit_json(doc, out);
  return 0;
}

int cmd_oplus(const std::string& measure_spec, double T, std::optional<double> deform,
              const std::string& x_text, const std::string& y_text, std::ostream& out) {
  WittContext ctx = make_context(measure_spec, T, deform);
  double x = parse_value(x_text, "x");
  double y = parse_value(y_text, "y");
  json inputs = {{"measure", measure_to_string(ctx.measure)},
                 {"T", jnum(T)},
                 {"x", jnum(x)},
                 {"y", jnum(y)}};
  if (deform) inputs["deform"] = jnum(*deform);
  json result;
  if (deform) {
    result["value"] = jnum(oplus_deformed(ctx, x, y));
  } else {
    OplusResult r = oplus(ctx, x, y);
    result["value"] = jnum(r.value);
    result["argmin_p"] = jnum(r.argmin_p);
    result["multiplicity_hint"] = r.multiplicity_hint;
  }
  json doc = {{"inputs", inputs},
              {"result", result},
              {"defects", json::object()},
              {"tolerances", {{"solver_tol", jnum(ctx.solver.tol)}}}};
  emit_json(doc, out);
  return 0;
}

int cmd_defect(const std::string& kind, const std::string& measure_spec, double T,
               std::optional<double> deform, int samples, std::uint64_t seed,
               std::ostream& out) {
  if (kind != "comm" && kind != "assoc") {
    throw std::invalid_argument("defect: --kind must be comm or assoc");
  }
  if (samples < 1) throw std::invalid_argument("defect: --samples must be >= 1");
  WittContext ctx = make_context(measure_spec, T, deform);
  Rng rng(seed);
  double max_defect = 0.0;
  std::vector<double> witness;
  for (int k = 0; k < samples; ++k) {
    double x = rng.uniform(-3.0, 3.0);
    double y = rng.uniform(-3.0, 3.0);
    double d;
    std::vector<double> point;
    if (kind == "comm") {
      d = commutator(ctx, x, y);
      point = {x, y};
    } else {
      double z = rng.uniform(-3.0, 3.0);
      d = associator(ctx, x, y, z);
      point = {x, y, z};
    }
    if (d > max_defect) {
      max_defect = d;
      witness = point;
    }
    if (witness.empty()) witness = point;  // keep a witness even if all defects are 0
  }
  json jwitness = json::array();
  for (double w : witness) jwitness.push_back(jnum(w));
  json inputs = {{"kind", kind},
                 {"measure", measure_to_string(ctx.measure)},
                 {"T", jnum(T)},
                 {"samples", samples},
                 {"seed", seed}};
  if (deform) inputs["deform"] = jnum(*deform);
  json doc = {{"inputs", inputs},
              {"result", {{"max_defect", jnum(max_defect)}, {"witness", jwitness}}},
              {"defects", {{"max_defect", jnum(max_defect)}}},
              {"tolerances", {{"solver_tol", jnum(ctx.solver.tol)}}}};
  emit_json(doc, out);
  return 0;
}

int cmd_successor_curve(const std::string& measure_spec, double T, double xmin,
                        double xmax, double step, const std::string& out_path,
                        std::ostream& out) {
  WittContext ctx = make_context(measure_spec, T, std::nullopt);
  SuccessorCurve curve = sample_curve(ctx, xmin, xmax, step);
  with_output(out_path, out, [&](std::ostream& sink) { write_curve_csv(curve, sink); });
  return 0;
}

int cmd_tree_eval(const std::string& measure_spec, double T, const std::string& tree_text,
                  const std::string& xs_text, bool oracle, std::ostream& out) {
  WittContext ctx = make_context(measure_spec, T, std::nullopt);
  GuessingTree tree = parse_tree(tree_text);
  std::vector<double> xs = parse_list(xs_text, "--xs");
  double value = tree_eval(tree, ctx, xs);
  json jxs = json::array();
  for (double x : xs) jxs.push_back(jnum(x));
  json result = {{"value", jnum(value)}};
  json defects = json::object();
  if (oracle) {
    double oracle_value = tree_eval_oracle(tree, ctx, xs);
    double defect =
        (value == oracle_value) ? 0.0 : std::fabs(value - oracle_value);
    result["oracle_value"] = jnum(oracle_value);
    result["defect"] = jnum(defect);
    defects["oracle"] = jnum(defect);
  }
  json doc = {{"inputs",
               {{"measure", measure_to_string(ctx.measure)},
                {"T", jnum(T)},
                {"tree", tree_to_string(tree)},
                {"xs", jxs}}},
              {"result", result},
              {"defects", defects},
              {"tolerances", {{"oracle_binary", 2e-3}, {"oracle_mixed", 5e-3}}}};
  emit_json(doc, out);
  return 0;
}

int cmd_legendre(const std::string& in_path, const std::string& out_path, double xmin,
                 double xmax, double step, bool biconj, std::ostream& out) {
  SampledFunction f = [&] {
    if (in_path == "-") return read_csv(std::cin);
    std::ifstream file(in_path);
    if (!file) throw std::invalid_argument("cannot open input file '" + in_path + "'");
    return read_csv(file);
  }();
  std::vector<double> dual = uniform_grid(xmin, xmax, step);
  SampledFunction result = biconj ? biconjugate(f, dual, f.grid) : conjugate(f, dual);
  with_output(out_path, out, [&](std::ostream& sink) { write_csv(result, sink); });
  return 0;
}

int cmd_cantor(const std::string& prefix, double T, const std::string& x_text,
               const std::string& y_text, std::ostream& out) {
  BitString bits = parse_bits(prefix);
  double q = digit_frequency(bits);
  if (q <= 0.0 || q >= 1.0) {
    throw std::invalid_argument(
        "cantor: prefix must contain both digits (frequency must be interior)");
  }
  double x = parse_value(x_text, "x");
  double y = parse_value(y_text, "y");
  WittContext ctx(Measure::kl(q), T);
  double value = oplus(ctx, x, y).value;
  double comm = commutator(ctx, x, y);
  // Digit exchange sends q to 1 - q; combined with an argument swap the
  // value must be restored.
  double q_flip = digit_frequency(bitflip(bits));
  WittContext flipped(Measure::kl(q_flip), T);
  double flipped_value = oplus(flipped, y, x).value;
  double restoration =
      (value == flipped_value) ? 0.0 : std::fabs(value - flipped_value);
  json doc = {{"inputs",
               {{"prefix", prefix}, {"T", jnum(T)}, {"x", jnum(x)}, {"y", jnum(y)}}},
              {"result",
               {{"q", jnum(q)},
                {"oplus", jnum(value)},
                {"comm_defect", jnum(comm)},
                {"flipped_check", jnum(restoration)}}},
              {"defects", {{"comm", jnum(comm)}, {"restoration", jnum(restoration)}}},
              {"tolerances", {{"fair_coin", 1e-8}, {"restoration", 1e-8}}}};
  emit_json(doc, out);
  return 0;
}

int cmd_multifractal(double q, double p, double l1, double l2, std::ostream& out) {
  MultifractalStats stats = multifractal_stats(q, p, l1, l2);
  json doc = {{"inputs", {{"q", jnum(q)}, {"p", jnum(p)}, {"l1", jnum(l1)}, {"l2", jnum(l2)}}},
              {"result",
               {{"local_dim", jnum(stats.local_dim)},
                {"local_entropy", jnum(stats.local_entropy)},
                {"lyapunov", jnum(stats.lyapunov)}}},
              {"defects", json::object()},
              {"tolerances", json::object()}};
  emit_json(doc, out);
  return 0;
}

int cmd_axioms(const std::string& measure_spec, double grid_step, double tol,
               std::ostream& out) {
  Measure m = parse_measure(measure_spec);
  AxiomReport report = axiom_report(m, grid_step, tol);
  auto jcheck = [](const AxiomCheck& c) {
    return json{{"defect", jnum(c.defect)}, {"pass", c.pass}};
  };
  json doc = {{"inputs",
               {{"measure", measure_to_string(m)},
                {"grid_step", jnum(grid_step)},
                {"tol", jnum(tol)}}},
              {"result",
               {{"commutativity", jcheck(report.commutativity)},
                {"identity_left", jcheck(report.identity_left)},
                {"identity_right", jcheck(report.identity_right)},
                {"associativity", jcheck(report.associativity)},
                {"alpha_associativity", jcheck(report.alpha_associativity)},
                {"khinchin_grouping", jcheck(report.khinchin_grouping)},
                {"alpha_used", jnum(report.alpha_used)}}},
              {"defects",
               {{"associativity", jnum(report.associativity.defect)},
                {"khinchin_grouping", jnum(report.khinchin_grouping.defect)}}},
              {"tolerances", {{"tol", jnum(tol)}}}};
  emit_json(doc, out);
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"entropy-deformed tropical addition toolkit"};
  app.name("thermoring");
  app.require_subcommand(1);

  // Shared option storage; each subcommand binds the flags it uses.
  std::string measure_spec;
  double T = 1.0;
  std::optional<double> deform;
  std::string x_text, y_text;
  std::optional<double> p_opt;
  std::optional<std::string> probs_text;
  std::string kind;
  int samples = 100;
  std::uint64_t seed = 0;
  double xmin = -5.0, xmax = 5.0, step = 0.01;
  std::string out_path = "-";
  std::string in_path;
  std::string tree_text, xs_text, prefix;
  bool oracle = false, biconj = false;
  double mf_q = 0.0, mf_p = 0.0, mf_l1 = 0.0, mf_l2 = 0.0;
  double grid_step = 0.02, tol = 1e-9;

  auto* entropy_cmd = app.add_subcommand("entropy", "evaluate a measure");
  entropy_cmd->add_option("--measure", measure_spec)->required();
  entropy_cmd->add_option("--p", p_opt, "binary argument");
  entropy_cmd->add_option("--probs", probs_text, "comma-separated distribution");

  auto* oplus_cmd = app.add_subcommand("oplus", "combine two values");
  oplus_cmd->add_option("--measure", measure_spec)->required();
  oplus_cmd->add_option("--T", T)->required();
  oplus_cmd->add_option("--deform", deform, "deformation exponent");
  oplus_cmd->add_option("x", x_text)->required();
  oplus_cmd->add_option("y", y_text)->required();

  auto* defect_cmd = app.add_subcommand("defect", "max axiom defect over random samples");
  defect_cmd->add_option("--kind", kind, "comm or assoc")->required();
  defect_cmd->add_option("--measure", measure_spec)->required();
  defect_cmd->add_option("--T", T)->required();
  defect_cmd->add_option("--deform", deform, "deformation exponent");
  defect_cmd->add_option("--samples", samples);
  defect_cmd->add_option("--seed", seed);

  auto* curve_cmd = app.add_subcommand("successor-curve", "sample x (+) 0 on a grid");
  curve_cmd->add_option("--measure", measure_spec)->required();
  curve_cmd->add_option("--T", T)->required();
  curve_cmd->add_option("--xmin", xmin)->required();
  curve_cmd->add_option("--xmax", xmax)->required();
  curve_cmd->add_option("--step", step)->required();
  curve_cmd->add_option("--out", out_path, "output path or -");

  auto* tree_cmd = app.add_subcommand("tree-eval", "nested evaluation of a guessing tree");
  tree_cmd->add_option("--measure", measure_spec)->required();
  tree_cmd->add_option("--T", T)->required();
  tree_cmd->add_option("--tree", tree_text)->required();
  tree_cmd->add_option("--xs", xs_text)->required();
  tree_cmd->add_flag("--oracle", oracle, "also run the simplex brute force");

  auto* legendre_cmd = app.add_subcommand("legendre", "conjugate a sampled function");
  legendre_cmd->add_option("--in", in_path, "input CSV path or -")->required();
  legendre_cmd->add_option("--xmin", xmin)->required();
  legendre_cmd->add_option("--xmax", xmax)->required();
  legendre_cmd->add_option("--step", step)->required();
  legendre_cmd->add_option("--out", out_path, "output path or -");
  legendre_cmd->add_flag("--biconjugate", biconj, "emit f** on the input grid");

  auto* cantor_cmd = app.add_subcommand("cantor", "digit-driven kl combination");
  cantor_cmd->add_option("--prefix", prefix)->required();
  cantor_cmd->add_option("--T", T)->required();
  cantor_cmd->add_option("--x", x_text)->required();
  cantor_cmd->add_option("--y", y_text)->required();

  auto* mf_cmd = app.add_subcommand("multifractal", "contraction statistics");
  mf_cmd->add_option("--q", mf_q)->required();
  mf_cmd->add_option("--p", mf_p)->required();
  mf_cmd->add_option("--l1", mf_l1)->required();
  mf_cmd->add_option("--l2", mf_l2)->required();

  auto* axioms_cmd = app.add_subcommand("axioms", "axiom defect report for a measure");
  axioms_cmd->add_option("--measure", measure_spec)->required();
  axioms_cmd->add_option("--grid-step", grid_step);
  axioms_cmd->add_option("--tol", tol);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (entropy_cmd->parsed()) return cmd_entropy(measure_spec, p_opt, probs_text, out);
    if (oplus_cmd->parsed()) return cmd_oplus(measure_spec, T, deform, x_text, y_text, out);
    if (defect_cmd->parsed()) {
      return cmd_defect(kind, measure_spec, T, deform, samples, seed, out);
    }
    if (curve_cmd->parsed()) {
      return cmd_successor_curve(measure_spec, T, xmin, xmax, step, out_path, out);
    }
    if (tree_cmd->parsed()) {
      return cmd_tree_eval(measure_spec, T, tree_text, xs_text, oracle, out);
    }
    if (legendre_cmd->parsed()) {
      return cmd_legendre(in_path, out_path, xmin, xmax, step, biconj, out);
    }
    if (cantor_cmd->parsed()) return cmd_cantor(prefix, T, x_text, y_text, out);
    if (mf_cmd->parsed()) return cmd_multifractal(mf_q, mf_p, mf_l1, mf_l2, out);
    if (axioms_cmd->parsed()) return cmd_axioms(measure_spec, grid_step, tol, out);
    err << "error: no subcommand selected\n";
    return 1;
  } catch (const std::overflow_error& e) {
    err << "numeric error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "numeric error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace thermoring
