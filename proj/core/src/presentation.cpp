#include "diop/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace diop {

Certificate Presentation::certificate() const {
  if (!measures.empty()) return Certificate::measure;
  if (order) return Certificate::order;
  return Certificate::none;
}

bool Presentation::is_monomial() const {
  return std::all_of(rules.begin(), rules.end(), [](const RewriteRule& r) { return r.rhs.is_zero(); });
}

const MonomialOrder& Presentation::require_order() const {
  if (!order) throw InputError("presentation " + name + " declares no order");
  return *order;
}

int dotted_internal_edges(const Alphabet& alpha, const Monomial& m) {
  int n = 0;
  for (size_t i = 1; i < m.code.size(); ++i) {
    auto x = m.code[i];
    if (!Monomial::is_leaf(x) && alpha.gen(x).sig.output == Color::dotted) ++n;
  }
  return n;
}

int compare_shapes(const Presentation& p, const Monomial& a, const Monomial& b) {
  return compare_unchecked(p.alpha, p.require_order(), a, b);
}

bool certified_step(const Presentation& p, const Monomial& from, const Monomial& to) {
  switch (p.certificate()) {
    case Certificate::none: return true;
    case Certificate::order: return compare_unchecked(p.alpha, *p.order, to, from) < 0;
    case Certificate::measure:
      for (const auto& m : p.measures) {
        int c = 0;
        if (m == "shape_rank") {
          c = compare_shapes(p, to, from);
        } else if (m == "dotted_internal_edges") {
          int a = dotted_internal_edges(p.alpha, to), b = dotted_internal_edges(p.alpha, from);
          c = a < b ? -1 : (a > b ? 1 : 0);
        }
        if (c != 0) return c < 0;
      }
      return false;
  }
  return false;
}

void check_certificate(const Presentation& p) {
  for (const auto& r : p.rules)
    for (const auto& t : r.rhs.terms()) {
      if (t.mono == r.lhs) throw InputError("rule " + r.name + ": left side occurs on the right");
      if (!certified_step(p, r.lhs, t.mono))
        throw InputError("rule " + r.name + ": right-side monomial " + format_term(p.alpha, t.mono) + " is not below the left side");
    }
}

std::optional<RewriteRule> orient(const Presentation& p, const std::string& name, const Polynomial& rel) {
  if (rel.is_zero()) return std::nullopt;
  const MonomialOrder& o = p.require_order();
  const Term* lead = &rel.terms().front();
  for (const auto& t : rel.terms())
    if (compare_unchecked(p.alpha, o, t.mono, lead->mono) > 0) lead = &t;
  RewriteRule r;
  r.name = name;
  r.lhs = lead->mono;
  Rational c = lead->coef;
  r.rhs = -(Rational(1) / c) * (rel - Polynomial(lead->mono, c));
  return r;
}

int max_rule_weight(const Presentation& p) {
  int w = 0;
  for (const auto& r : p.rules) w = std::max(w, weight(p.alpha, r.lhs));
  return w;
}

namespace {

std::string trim(std::string_view s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; });
}

std::vector<std::string> words(std::string_view s) {
  std::istringstream is{std::string(s)};
  std::vector<std::string> out;
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

struct Line {
  int number;
  std::string keyword;
  std::string rest;
};

[[noreturn]] void fail(const Line& l, const std::string& msg) {
  throw InputError("line " + std::to_string(l.number) + ": " + msg);
}

Generator parse_gen(const Line& l) {
  auto colon = l.rest.find(':');
  if (colon == std::string::npos) fail(l, "expected 'gen NAME : (COLORS) -> COLOR'");
  Generator g;
  g.name = trim(l.rest.substr(0, colon));
  if (!is_identifier(g.name)) fail(l, "bad generator name '" + g.name + "'");
  std::string tail = l.rest.substr(colon + 1);
  auto arrow = tail.find("->");
  if (arrow == std::string::npos) fail(l, "expected '->' in signature");
  std::string ins = trim(tail.substr(0, arrow));
  auto after = words(tail.substr(arrow + 2));
  if (after.empty()) fail(l, "missing output color");
  if (ins.size() < 2 || ins.front() != '(' || ins.back() != ')') fail(l, "inputs must be written in parentheses");
  for (char c : ins.substr(1, ins.size() - 2)) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) continue;
    if (c != 's' && c != 'd') fail(l, std::string("unknown color '") + c + "'");
    g.sig.inputs.push_back(color_from_char(c));
  }
  if (after[0] != "s" && after[0] != "d") fail(l, "unknown output color '" + after[0] + "'");
  g.sig.output = color_from_char(after[0][0]);
  for (size_t i = 1; i < after.size(); i += 2) {
    if (i + 1 >= after.size()) fail(l, "missing value after '" + after[i] + "'");
    int v = 0;
    try {
      v = std::stoi(after[i + 1]);
    } catch (const std::exception&) {
      fail(l, "bad integer '" + after[i + 1] + "'");
    }
    if (after[i] == "deg")
      g.hdegree = v;
    else if (after[i] == "wt")
      g.weight = v;
    else
      fail(l, "unknown generator attribute '" + after[i] + "'");
  }
  if (g.weight < 1) fail(l, "generator weight must be positive");
  if (g.sig.inputs.empty()) fail(l, "generators without inputs are not supported");
  return g;
}

}  // namespace

Presentation parse_presentation(std::string_view text) {
  std::vector<Line> lines;
  {
    std::istringstream is{std::string(text)};
    std::string raw;
    int n = 0;
    while (std::getline(is, raw)) {
      ++n;
      auto hash = raw.find('#');
      if (hash != std::string::npos) raw.resize(hash);
      std::string t = trim(raw);
      if (t.empty()) continue;
      size_t sp = 0;
      while (sp < t.size() && !std::isspace(static_cast<unsigned char>(t[sp]))) ++sp;
      lines.push_back({n, t.substr(0, sp), trim(std::string_view(t).substr(sp))});
    }
  }
  Presentation p;
  bool have_mode = false;
  const Line* order_line = nullptr;
  std::vector<const Line*> rule_lines;
  for (const auto& l : lines) {
    if (l.keyword == "operad") {
      if (have_mode) fail(l, "duplicate operad line");
      if (l.rest == "shuffle")
        p.alpha.mode = Mode::shuffle;
      else if (l.rest == "planar")
        p.alpha.mode = Mode::planar;
      else
        fail(l, "operad must be shuffle or planar");
      have_mode = true;
    } else if (l.keyword == "name") {
      p.name = l.rest;
    } else if (l.keyword == "order") {
      if (order_line) fail(l, "duplicate order line");
      order_line = &l;
    } else if (l.keyword == "measure") {
      p.measures = words(l.rest);
      for (const auto& m : p.measures)
        if (m != "shape_rank" && m != "dotted_internal_edges") fail(l, "unknown measure '" + m + "'");
    } else if (l.keyword == "gen") {
      Generator g = parse_gen(l);
      if (p.alpha.index_of(g.name) >= 0) fail(l, "duplicate generator '" + g.name + "'");
      p.alpha.gens.push_back(std::move(g));
    } else if (l.keyword == "rule" || l.keyword == "rel") {
      rule_lines.push_back(&l);
    } else if (l.keyword == "dioperad") {
      fail(l, "dioperad block: load it through the dioperad reader");
    } else {
      fail(l, "unknown directive '" + l.keyword + "'");
    }
  }
  if (!have_mode && !lines.empty()) fail(lines.front(), "missing 'operad shuffle|planar' line");
  if (order_line) {
    auto w = words(order_line->rest);
    if (w.empty()) fail(*order_line, "order kind missing");
    try {
      OrderKind k = parse_order_kind(w[0]);
      p.order_names.assign(w.begin() + 1, w.end());
      p.order = p.measures.empty() ? MonomialOrder::make(p.alpha, k, p.order_names)
                                   : MonomialOrder::make_by_base(p.alpha, k, p.order_names);
    } catch (const InputError& e) {
      fail(*order_line, e.what());
    }
  }
  for (const Line* l : rule_lines) {
    auto colon = l->rest.find(':');
    if (colon == std::string::npos) fail(*l, "expected NAME ':'");
    std::string name = trim(l->rest.substr(0, colon));
    if (!is_identifier(name)) fail(*l, "bad rule name '" + name + "'");
    std::string body = l->rest.substr(colon + 1);
    try {
      if (l->keyword == "rule") {
        auto arrow = body.find("->");
        if (arrow == std::string::npos) fail(*l, "expected '->' in rule");
        RewriteRule r;
        r.name = name;
        r.lhs = parse_term(p.alpha, trim(body.substr(0, arrow)));
        r.rhs = parse_polynomial(p.alpha, trim(body.substr(arrow + 2)));
        if (!r.rhs.is_zero() && signature(p.alpha, r.rhs.terms().front().mono) != signature(p.alpha, r.lhs))
          fail(*l, "rule " + name + ": sides have different signatures");
        p.rules.push_back(std::move(r));
      } else {
        auto eq = body.rfind('=');
        if (eq == std::string::npos || trim(body.substr(eq + 1)) != "0") fail(*l, "expected 'POLY = 0'");
        if (!p.order) fail(*l, "relation " + name + " needs an order line to be oriented");
        Polynomial rel = parse_polynomial(p.alpha, trim(body.substr(0, eq)));
        if (p.certificate() == Certificate::measure) fail(*l, "relations cannot be oriented by a measure");
        auto r = orient(p, name, rel);
        if (!r) fail(*l, "relation " + name + " is zero");
        p.rules.push_back(std::move(*r));
      }
    } catch (const InputError& e) {
      std::string msg = e.what();
      if (msg.rfind("line ", 0) == 0) throw;
      fail(*l, msg);
    }
  }
  try {
    check_certificate(p);
  } catch (const InputError& e) {
    throw InputError(std::string("certificate: ") + e.what());
  }
  return p;
}

std::string serialize_presentation(const Presentation& p) {
  std::ostringstream os;
  if (!p.name.empty()) os << "name " << p.name << "\n";
  os << "operad " << mode_name(p.alpha.mode) << "\n";
  for (const auto& g : p.alpha.gens) {
    os << "gen " << g.name << " : (";
    for (size_t i = 0; i < g.sig.inputs.size(); ++i) os << (i ? "," : "") << color_char(g.sig.inputs[i]);
    os << ") -> " << color_char(g.sig.output);
    if (g.hdegree != 0) os << " deg " << g.hdegree;
    if (g.weight != 1) os << " wt " << g.weight;
    os << "\n";
  }
  if (p.order) {
    os << "order " << order_kind_name(p.order->kind);
    for (const auto& n : p.order_names) os << " " << n;
    os << "\n";
  }
  if (!p.measures.empty()) {
    os << "measure";
    for (const auto& m : p.measures) os << " " << m;
    os << "\n";
  }
  for (const auto& r : p.rules)
    os << "rule " << r.name << " : " << format_term(p.alpha, r.lhs) << " -> " << format_polynomial(p.alpha, r.rhs) << "\n";
  return os.str();
}

}  // namespace diop
