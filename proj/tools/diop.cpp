// diop: command-line front end.
//
// Exit codes: 0 success or pass, 1 checked and failed, 2 input error,
// 3 resource guard.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "diop/corpus.hpp"
#include "diop/enumerate.hpp"
#include "diop/hilbert.hpp"
#include "diop/psi.hpp"
#include "diop/resolution.hpp"
#include "diop/rewrite.hpp"
#include "diop/series.hpp"
#include "diop/theta.hpp"

using json = nlohmann::ordered_json;
using namespace diop;

namespace {

std::string digest(const std::vector<std::string>& texts) {
  std::uint64_t h = 1469598103934665603ull;
  for (const auto& t : texts) {
    for (unsigned char c : t) {
      h ^= c;
      h *= 1099511628211ull;
    }
    h ^= 0xff;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

json qpoly_json(const QPoly& p) {
  json a = json::array();
  for (const auto& [e, c] : p.coeffs()) a.push_back(json::array({e, to_string(c)}));
  return a;
}

json sig_json(const Signature& s) { return s.str(); }

struct Context {
  bool as_json = false;
  std::string emit;
  json report;
  std::vector<std::string> inputs;
};

Presentation load(Context& ctx, const std::string& src) {
  std::string text = read_source(src);
  ctx.inputs.push_back(text);
  if (!ctx.emit.empty()) {
    std::ofstream out(ctx.emit);
    if (!out) throw InputError("cannot write '" + ctx.emit + "'");
    out << text;
  }
  return src.starts_with("corpus:") ? corpus(src.substr(7)) : load_presentation(text);
}

std::string table_cell(const QPoly& p) { return p.is_zero() ? "0" : p.str(); }

// --- confluence -----------------------------------------------------------

int cmd_confluence(Context& ctx, const std::string& src, long budget, unsigned threads, int show) {
  Presentation p = load(ctx, src);
  ConfluenceReport r = check_confluence(p, budget, threads);
  json failures = json::array();
  for (const auto& f : r.failures) {
    failures.push_back({{"host", format_term(p.alpha, f.overlap.host)},
                        {"rule_a", p.rules[static_cast<size_t>(f.overlap.rule_a)].name},
                        {"rule_b", p.rules[static_cast<size_t>(f.overlap.rule_b)].name},
                        {"residual", format_polynomial(p.alpha, f.residual)},
                        {"budget_hit", f.budget_hit}});
  }
  ctx.report["result"] = {{"presentation", p.name},
                          {"generators", p.alpha.size()},
                          {"rules", p.rules.size()},
                          {"overlaps", r.overlaps_checked},
                          {"confluent", r.confluent()},
                          {"step_budget_hit", r.step_budget_hit},
                          {"failures", failures}};
  if (!ctx.as_json) {
    std::cout << p.name << ": " << p.alpha.size() << " generators, " << p.rules.size() << " rules, "
              << r.overlaps_checked << " overlaps\n";
    std::cout << (r.confluent() ? "confluent" : "NOT confluent") << " (" << r.failures.size() << " failures)\n";
    int k = 0;
    for (const auto& f : failures) {
      if (k++ >= show) break;
      std::cout << "  " << f["rule_a"].get<std::string>() << " / " << f["rule_b"].get<std::string>() << " on "
                << f["host"].get<std::string>() << "\n    residual " << f["residual"].get<std::string>() << "\n";
    }
  }
  if (r.step_budget_hit && r.confluent()) return 3;
  return r.confluent() ? 0 : 1;
}

// --- dims -----------------------------------------------------------------

int cmd_dims(Context& ctx, const std::string& src, int max_total, bool oracle, size_t guard) {
  Presentation p = load(ctx, src);
  auto nf = dioperad_dims(p, max_total, DimsMethod::normal_forms, guard);
  std::map<std::pair<int, int>, QPoly> orc;
  if (oracle) orc = dioperad_dims(p, max_total, DimsMethod::oracle, guard);
  bool match = true;
  json rows = json::array();
  for (const auto& [mn, v] : nf) {
    json row = {{"m", mn.first}, {"n", mn.second}, {"dim", qpoly_json(v)}};
    if (oracle) {
      row["oracle"] = qpoly_json(orc.at(mn));
      row["match"] = orc.at(mn) == v;
      match &= orc.at(mn) == v;
    }
    rows.push_back(row);
  }
  ctx.report["result"] = {{"presentation", p.name}, {"max_total", max_total}, {"table", rows}};
  if (oracle) ctx.report["result"]["match"] = match;
  if (!ctx.as_json) {
    std::cout << p.name << ": dim_q P(m,n), m+n <= " << max_total << "\n";
    for (const auto& [mn, v] : nf) {
      std::cout << "  (" << mn.first << "," << mn.second << ")  " << std::left << std::setw(16) << table_cell(v);
      if (oracle) std::cout << " oracle " << std::setw(16) << table_cell(orc.at(mn)) << (orc.at(mn) == v ? "" : " MISMATCH");
      std::cout << "\n";
    }
    if (oracle) std::cout << (match ? "normal forms agree with the oracle\n" : "normal forms DISAGREE with the oracle\n");
  }
  return match ? 0 : 1;
}

// --- series ---------------------------------------------------------------

json series_json(const Series& s) {
  json a = json::array();
  for (const auto& [mn, v] : s.coeffs()) a.push_back({{"m", mn.first}, {"n", mn.second}, {"coef", qpoly_json(v)}});
  return a;
}

int cmd_series(Context& ctx, const std::string& src, int order, bool invert, size_t guard) {
  Presentation p = load(ctx, src);
  Series chi = series_from_dims(dioperad_dims(p, order, DimsMethod::automatic, guard), order);
  ctx.report["result"] = {{"presentation", p.name}, {"order", order}, {"chi", series_json(chi)}};
  if (!ctx.as_json) std::cout << "chi = " << chi.str() << "\n";
  if (invert) {
    Series neg = chi.substitute_neg_q();
    SeriesPair g = invert_pair({neg.partial_y(), neg.partial_x()});
    QPoly u2v = g.first.at(2, 1);
    bool negative = u2v.has_negative_coefficient();
    ctx.report["result"]["inverse"] = {{"x", series_json(g.first)}, {"y", series_json(g.second)}};
    ctx.report["result"]["x_u2v"] = qpoly_json(u2v);
    ctx.report["result"]["x_u2v_has_negative_coefficient"] = negative;
    if (!ctx.as_json) {
      std::cout << "u = d_y chi(-q), v = d_x chi(-q); inverse:\n  x(u,v) = " << g.first.str()
                << "\n  y(u,v) = " << g.second.str() << "\ncoefficient of u^2 v in x: " << u2v.str()
                << (negative ? " (has a negative coefficient)" : "") << "\n";
    }
  }
  return 0;
}

// --- koszul-check ---------------------------------------------------------

int cmd_koszul(Context& ctx, const std::string& a, const std::string& b, int order, size_t guard) {
  Presentation p = load(ctx, a);
  Presentation q = load(ctx, b);
  Series chi_p = series_from_dims(dioperad_dims(p, order, DimsMethod::automatic, guard), order);
  Series chi_q = series_from_dims(dioperad_dims(q, order, DimsMethod::automatic, guard), order);
  KoszulCheck k = koszul_series_check(chi_p, chi_q);
  ctx.report["result"] = {{"presentation", p.name}, {"dual", q.name}, {"order", order}, {"pass", k.pass}};
  if (k.residual) {
    auto [c, m, n, r] = *k.residual;
    ctx.report["result"]["residual"] = {{"component", c}, {"m", m}, {"n", n}, {"coef", qpoly_json(r)}};
  }
  if (!ctx.as_json) {
    std::cout << p.name << " / " << q.name << " through order " << order << ": " << (k.pass ? "pass" : "FAIL") << "\n";
    if (k.residual) {
      auto [c, m, n, r] = *k.residual;
      std::cout << "  component " << c << " at x^" << m << " y^" << n << ": residual " << r.str() << "\n";
    }
  }
  return k.pass ? 0 : 1;
}

// --- psi ------------------------------------------------------------------

int cmd_psi(Context& ctx, const std::string& src) {
  std::string text = read_source(src);
  ctx.inputs.push_back(text);
  if (!is_dioperad_text(text)) throw InputError("psi needs a dioperad presentation");
  DioperadPresentation d = parse_dioperad(text);
  Presentation p = shuffle_expand(d);
  json gens = json::array();
  for (const auto& g : psi_generators(d))
    gens.push_back({{"name", g.name},
                    {"from", d.gens[static_cast<size_t>(g.dgen)].name},
                    {"signature", sig_json(g.sig)},
                    {"stabilizer", g.stabilizer_order},
                    {"antisymmetric", g.antisymmetric}});
  ctx.report["result"] = {{"dioperad", d.name}, {"colored_generators", gens}, {"rules", p.rules.size()},
                          {"presentation", serialize_presentation(p)}};
  if (!ctx.as_json) {
    for (const auto& g : gens)
      std::cout << g["name"].get<std::string>() << " " << g["signature"].get<std::string>() << "\n";
    std::cout << "\n" << serialize_presentation(p);
  }
  return 0;
}

// --- reroot ---------------------------------------------------------------

void rooted_dot(const DioperadPresentation& d, const RootedNode& r, std::ostream& os, int& next, int parent) {
  int me = next++;
  if (r.leaf) {
    os << "  n" << me << " [shape=plaintext,label=\"" << (r.leg.output ? "out" : "in") << r.leg.label << "\"];\n";
  } else {
    os << "  n" << me << " [label=\"" << d.gens[static_cast<size_t>(r.gen)].name << "\"];\n";
    for (const auto& c : r.children) rooted_dot(d, c, os, next, me);
  }
  if (parent >= 0)
    os << "  n" << parent << " -> n" << me << (r.color == Color::dotted ? " [style=dashed]" : "") << ";\n";
}

int cmd_reroot(Context& ctx, const std::string& tree_text, const std::string& root_text, const std::string& src,
               bool dot) {
  DioperadPresentation d;
  if (!src.empty()) {
    std::string text = read_source(src);
    ctx.inputs.push_back(text);
    d = parse_dioperad(text);
  }
  ctx.inputs.push_back(tree_text);
  DioperadTree t = parse_dtree(d, tree_text);
  RootLeg root = parse_root_leg(root_text);
  RootedNode r = reroot(d, t, root);
  std::string shown = format_rooted(d, r);
  ctx.report["result"] = {{"root", root_text}, {"rooted", shown}};
  std::ostringstream dotted;
  if (dot) {
    dotted << "digraph T {\n  rankdir=BT;\n";
    int next = 0;
    rooted_dot(d, r, dotted, next, -1);
    dotted << "}\n";
    ctx.report["result"]["dot"] = dotted.str();
  }
  if (!ctx.as_json) std::cout << (dot ? dotted.str() : shown + "\n");
  return 0;
}

// --- theta ----------------------------------------------------------------

int cmd_theta(Context& ctx, const std::string& src, const std::string& coloring, bool relations,
              const std::string& order) {
  Presentation p = load(ctx, src);
  ColoringRule c = ColoringRule::parse(coloring);
  bool closed = coloring_closed(c, 12);
  Presentation t = relations ? theta_presentation(p, c, parse_order_kind(order)) : theta_rules(p, c);
  ConfluenceReport r = check_confluence(t);
  ctx.report["result"] = {{"source", p.name},
                          {"coloring", c.name()},
                          {"coloring_closed", closed},
                          {"generators", t.alpha.size()},
                          {"rules", t.rules.size()},
                          {"confluent", r.confluent()},
                          {"presentation", serialize_presentation(t)}};
  if (!ctx.as_json) {
    std::cout << serialize_presentation(t) << "\n# coloring " << c.name() << (closed ? "" : " (not closed)") << ", "
              << t.alpha.size() << " generators, " << t.rules.size() << " rules, "
              << (r.confluent() ? "confluent" : "NOT confluent") << "\n";
  }
  return r.confluent() ? 0 : 1;
}

// --- resolve --------------------------------------------------------------

int cmd_resolve(Context& ctx, const std::string& src, int max_weight, size_t guard) {
  Presentation p = load(ctx, src);
  Presentation q = p.is_monomial() ? p : leading_monomial_operad(p);
  int maxar = 1;
  for (const auto& g : q.alpha.gens) maxar = std::max(maxar, g.arity());
  json blocks = json::array();
  bool all_zero = true;
  if (!ctx.as_json)
    std::cout << q.name << ": signature, weight, chains per hdeg, generators, homology per hdeg, d^2\n";
  for (int w = 1; w <= max_weight; ++w)
    for (int n = 1; n <= 1 + w * (maxar - 1); ++n)
      for (const auto& sig : all_signatures(n)) {
        ChainComplexBlock b = build_block(q, sig, w, guard);
        if (b.bases.empty()) continue;
        bool dd = d_squared_zero(b);
        all_zero &= dd;
        json chains = json::array();
        for (const auto& level : b.bases) chains.push_back(level.size());
        json hom = json::array();
        for (auto [k, rk] : homology_ranks(b)) hom.push_back(json::array({k, rk}));
        int gens = generator_count(q.alpha, b);
        blocks.push_back({{"signature", sig_json(sig)}, {"weight", w}, {"chains", chains}, {"generators", gens},
                          {"homology", hom}, {"d_squared_zero", dd}});
        if (!ctx.as_json) {
          std::cout << "  " << std::left << std::setw(22) << sig.str() << " w" << w << "  chains";
          for (const auto& level : b.bases) std::cout << " " << level.size();
          std::cout << "  gens " << gens << "  H";
          for (auto [k, rk] : homology_ranks(b)) std::cout << " " << k << ":" << rk;
          std::cout << (dd ? "" : "  d^2 != 0") << "\n";
        }
      }
  ctx.report["result"] = {{"presentation", q.name}, {"max_weight", max_weight}, {"blocks", blocks},
                          {"d_squared_zero", all_zero}};
  return all_zero ? 0 : 1;
}

// --- reduce ---------------------------------------------------------------

int cmd_reduce(Context& ctx, const std::string& src, const std::string& poly, long budget, bool dot) {
  Presentation p = load(ctx, src);
  ctx.inputs.push_back(poly);
  Polynomial in = parse_polynomial(p.alpha, poly);
  Rewriter rw(p);
  NormalFormResult r = rw.normal_form(in, budget);
  ctx.report["result"] = {{"input", format_polynomial(p.alpha, in)},
                          {"normal_form", format_polynomial(p.alpha, r.poly)},
                          {"steps", r.steps},
                          {"budget_hit", r.budget_hit}};
  if (!ctx.as_json) {
    if (dot) {
      int k = 0;
      for (const auto& t : r.poly.terms()) std::cout << to_dot(p.alpha, t.mono, "T" + std::to_string(k++));
    } else {
      std::cout << format_polynomial(p.alpha, r.poly) << "\n# " << r.steps << " steps\n";
    }
  }
  return r.budget_hit ? 3 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"diop: dioperads via colored shuffle operads"};
  app.require_subcommand(1);
  Context ctx;
  app.add_flag("--json", ctx.as_json, "Print a JSON report instead of text");
  app.add_option("--emit", ctx.emit, "Write the source text of the (first) input to FILE");

  std::string src, src2, poly, tree, root, coloring = "pos_pos", order = "pathlex";
  long budget = kDefaultBudget;
  unsigned threads = 0;
  int max_total = 6, korder = 8, max_weight = 4, show = 10;
  size_t guard = kDefaultOracleGuard;
  bool oracle = false, invert = false, dot = false, relations = false;

  auto add_common = [&](CLI::App* c) {
    c->add_flag("--json", ctx.as_json, "Print a JSON report instead of text");
    c->add_option("--emit", ctx.emit, "Write the source text of the (first) input to FILE");
  };

  auto* conf = app.add_subcommand("confluence", "Check all critical pairs");
  conf->add_option("source", src, "Presentation file or corpus:NAME")->required();
  conf->add_option("--budget", budget, "Reduction step budget per overlap");
  conf->add_option("--threads", threads, "Worker threads (0 = hardware)");
  conf->add_option("--show", show, "Failures listed in text mode");
  add_common(conf);

  auto* dims = app.add_subcommand("dims", "Dimension table dim_q P(m,n)");
  dims->add_option("source", src, "Presentation file or corpus:NAME")->required();
  dims->add_option("--max-total", max_total, "Largest m+n");
  dims->add_flag("--oracle", oracle, "Also compute dimensions by linear algebra");
  dims->add_option("--guard", guard, "Largest block handled by the oracle");
  add_common(dims);

  auto* ser = app.add_subcommand("series", "Generating series chi(x,y;q)");
  ser->add_option("source", src, "Presentation file or corpus:NAME")->required();
  ser->add_option("--order", korder, "Total degree bound");
  ser->add_flag("--invert", invert, "Invert (d_y chi, d_x chi) at q -> -q");
  ser->add_option("--guard", guard, "Largest block handled by the oracle");
  add_common(ser);

  auto* kos = app.add_subcommand("koszul-check", "Series functional equation for a dual pair");
  kos->add_option("source", src, "Presentation")->required();
  kos->add_option("dual", src2, "Its quadratic dual")->required();
  kos->add_option("--order", korder, "Total degree bound");
  kos->add_option("--guard", guard, "Largest block handled by the oracle");
  add_common(kos);

  auto* psi = app.add_subcommand("psi", "Expand a dioperad into its colored shuffle presentation");
  psi->add_option("source", src, "Dioperad file or corpus:NAME")->required();
  add_common(psi);

  auto* rr = app.add_subcommand("reroot", "Reroot a dioperadic tree at a leg");
  rr->add_option("--tree", tree, "dtree{...}")->required();
  rr->add_option("--root", root, "outK or inK")->required();
  rr->add_option("--dioperad", src, "Dioperad declaring the generators");
  rr->add_flag("--dot", dot, "Print DOT");
  add_common(rr);

  auto* th = app.add_subcommand("theta", "Colored rewriting system of a cyclic presentation");
  th->add_option("source", src, "Presentation file or corpus:NAME")->required();
  th->add_option("--coloring", coloring, "pos_pos, nonneg_pos, nonneg_nonneg, outputs_one, equal, custom:M,N;...");
  th->add_flag("--relations", relations, "Colored relations reduced to echelon form instead of colored rules");
  th->add_option("--order", order, "Order used with --relations");
  add_common(th);

  auto* res = app.add_subcommand("resolve", "Inclusion-exclusion complex of the leading-monomial operad");
  res->add_option("source", src, "Presentation file or corpus:NAME")->required();
  res->add_option("--max-weight", max_weight, "Largest weight");
  res->add_option("--guard", guard, "Largest block");
  add_common(res);

  auto* red = app.add_subcommand("reduce", "Normal form of a polynomial");
  red->add_option("source", src, "Presentation file or corpus:NAME")->required();
  red->add_option("poly", poly, "Polynomial")->required();
  red->add_option("--budget", budget, "Reduction step budget");
  red->add_flag("--dot", dot, "Print the normal form monomials as DOT");
  add_common(red);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  auto start = std::chrono::steady_clock::now();
  int code = 0;
  std::string command = app.get_subcommands().front()->get_name();
  ctx.report["command"] = command;
  try {
    if (command == "confluence") code = cmd_confluence(ctx, src, budget, threads, show);
    else if (command == "dims") code = cmd_dims(ctx, src, max_total, oracle, guard);
    else if (command == "series") code = cmd_series(ctx, src, korder, invert, guard);
    else if (command == "koszul-check") code = cmd_koszul(ctx, src, src2, korder, guard);
    else if (command == "psi") code = cmd_psi(ctx, src);
    else if (command == "reroot") code = cmd_reroot(ctx, tree, root, src, dot);
    else if (command == "theta") code = cmd_theta(ctx, src, coloring, relations, order);
    else if (command == "resolve") code = cmd_resolve(ctx, src, max_weight, guard);
    else if (command == "reduce") code = cmd_reduce(ctx, src, poly, budget, dot);
  } catch (const GuardExceeded& e) {
    std::cerr << "diop: resource guard: " << e.what() << "\n";
    ctx.report["error"] = {{"kind", "guard"}, {"message", e.what()}};
    code = 3;
  } catch (const InputError& e) {
    std::cerr << "diop: " << e.what() << "\n";
    ctx.report["error"] = {{"kind", "input"}, {"message", e.what()}};
    code = 2;
  }
  ctx.report["inputs_digest"] = digest(ctx.inputs);
  ctx.report["exit_code"] = code;
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (ctx.as_json) std::cout << ctx.report.dump(2) << "\n";
  std::cerr << "diop " << command << ": " << std::fixed << std::setprecision(3) << secs << " s\n";
  return code;
}
