#include "diop/psi.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <sstream>

#include "diop/linalg.hpp"

namespace diop {

int DioperadPresentation::index_of(std::string_view n) const {
  for (size_t i = 0; i < gens.size(); ++i)
    if (gens[i].name == n) return static_cast<int>(i);
  return -1;
}

std::vector<LegPerm> symmetry_group(const DioperadGenerator& g) {
  const int L = g.legs();
  std::map<std::vector<int>, int> seen;
  std::vector<int> id(static_cast<size_t>(L));
  for (int i = 0; i < L; ++i) id[static_cast<size_t>(i)] = i;
  seen[id] = 1;
  std::vector<std::vector<int>> queue{id};
  for (size_t q = 0; q < queue.size(); ++q) {
    auto cur = queue[q];
    int cs = seen[cur];
    for (const auto& s : g.symmetry) {
      std::vector<int> nxt(static_cast<size_t>(L));
      for (int i = 0; i < L; ++i) nxt[static_cast<size_t>(i)] = s.image[static_cast<size_t>(cur[static_cast<size_t>(i)])];
      int ns = cs * s.sign;
      auto [it, fresh] = seen.emplace(nxt, ns);
      if (!fresh) {
        if (it->second != ns) throw InputError("generator " + g.name + ": inconsistent symmetry character");
        continue;
      }
      if (seen.size() > 40320) throw InputError("generator " + g.name + ": symmetry group too large");
      queue.push_back(std::move(nxt));
    }
  }
  std::vector<LegPerm> out;
  for (auto& [img, s] : seen) out.push_back({img, s});
  return out;
}

// ---------------------------------------------------------------------------
// trees

namespace {

std::string trim(std::string_view s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

int to_int(const std::string& s, const std::string& what) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw InputError("expected a number for " + what + ", got '" + s + "'");
  return std::stoi(s);
}

// "vA.out 2" -> (vertex id, "out", 2)
std::tuple<std::string, std::string, int> parse_port(const std::string& s) {
  auto dot = s.find('.');
  if (dot == std::string::npos) throw InputError("expected VERTEX.in K or VERTEX.out K, got '" + s + "'");
  std::string v = trim(s.substr(0, dot));
  std::string rest = trim(s.substr(dot + 1));
  size_t k = 0;
  while (k < rest.size() && std::isalpha(static_cast<unsigned char>(rest[k]))) ++k;
  std::string dir = rest.substr(0, k), num = trim(rest.substr(k));
  if (dir != "in" && dir != "out") throw InputError("expected 'in' or 'out' in '" + s + "'");
  return {v, dir, to_int(num, "slot in '" + s + "'")};
}

}  // namespace

DioperadTree parse_dtree(DioperadPresentation& d, std::string_view text) {
  std::string body = trim(text);
  if (body.rfind("dtree", 0) == 0) body = trim(body.substr(5));
  if (body.size() < 2 || body.front() != '{' || body.back() != '}') throw InputError("expected dtree{ ... }");
  body = body.substr(1, body.size() - 2);
  DioperadTree t;
  std::map<std::string, int> vid;
  auto vertex = [&](const std::string& id) {
    auto it = vid.find(id);
    if (it == vid.end()) throw InputError("dtree: unknown vertex '" + id + "'");
    return it->second;
  };
  for (const auto& stmt : split(body, ';')) {
    if (stmt.empty()) continue;
    std::istringstream is(stmt);
    std::string head;
    is >> head;
    if (head == "edge") {
      auto arrow = stmt.find("->");
      if (arrow == std::string::npos) throw InputError("dtree: edge needs '->': " + stmt);
      auto [va, da, sa] = parse_port(trim(stmt.substr(4, arrow - 4)));
      auto [vb, db, sb] = parse_port(trim(stmt.substr(arrow + 2)));
      if (da != "out" || db != "in") throw InputError("dtree: edges run from an output to an input: " + stmt);
      t.edges.push_back({vertex(va), sa - 1, vertex(vb), sb - 1});
    } else if (head == "in" || head == "out") {
      auto eq = stmt.find('=');
      if (eq == std::string::npos) throw InputError("dtree: expected '= LABEL' in " + stmt);
      auto [v, dir, slot] = parse_port(trim(stmt.substr(head.size(), eq - head.size())));
      if (dir != head) throw InputError("dtree: '" + head + "' statement must name a " + head + " slot: " + stmt);
      int label = to_int(trim(stmt.substr(eq + 1)), "label");
      (head == "in" ? t.inputs : t.outputs).push_back({vertex(v), slot - 1, label});
    } else {
      auto eq = stmt.find('=');
      if (eq == std::string::npos) throw InputError("dtree: unknown statement '" + stmt + "'");
      std::string id = trim(stmt.substr(0, eq));
      std::string gen = trim(stmt.substr(eq + 1));
      auto paren = gen.find('(');
      if (paren != std::string::npos) {
        std::string name = trim(gen.substr(0, paren));
        auto close = gen.find(')', paren);
        if (close == std::string::npos) throw InputError("dtree: bad inline arity in '" + stmt + "'");
        auto mn = split(gen.substr(paren + 1, close - paren - 1), ',');
        if (mn.size() != 2) throw InputError("dtree: inline arity must be (M,N)");
        int m = to_int(mn[0], "M"), n = to_int(mn[1], "N");
        int g = d.index_of(name);
        if (g < 0) {
          d.gens.push_back({name, m, n, {}, 1, 0});
        } else if (d.gens[static_cast<size_t>(g)].m != m || d.gens[static_cast<size_t>(g)].n != n) {
          throw InputError("dtree: inline arity of " + name + " disagrees with its declaration");
        }
        gen = name;
      }
      int g = d.index_of(gen);
      if (g < 0) throw InputError("dtree: undeclared generator '" + gen + "'");
      if (vid.count(id)) throw InputError("dtree: duplicate vertex '" + id + "'");
      vid[id] = static_cast<int>(t.vertices.size());
      t.vertices.push_back({id, g});
    }
  }
  validate_tree(d, t);
  return t;
}

void validate_tree(const DioperadPresentation& d, const DioperadTree& t) {
  const size_t V = t.vertices.size();
  if (V == 0) throw InputError("dtree: no vertices");
  std::vector<std::vector<int>> in_used(V), out_used(V);
  for (size_t v = 0; v < V; ++v) {
    const auto& g = d.gens[static_cast<size_t>(t.vertices[v].gen)];
    in_used[v].assign(static_cast<size_t>(g.m), 0);
    out_used[v].assign(static_cast<size_t>(g.n), 0);
  }
  auto use = [&](std::vector<std::vector<int>>& u, int v, int slot, const char* what) {
    auto& row = u[static_cast<size_t>(v)];
    if (slot < 0 || slot >= static_cast<int>(row.size()))
      throw InputError(std::string("dtree: vertex ") + t.vertices[static_cast<size_t>(v)].id + " has no " + what + " slot " + std::to_string(slot + 1));
    if (row[static_cast<size_t>(slot)]++)
      throw InputError(std::string("dtree: ") + what + " slot " + std::to_string(slot + 1) + " of " + t.vertices[static_cast<size_t>(v)].id + " used twice");
  };
  for (const auto& e : t.edges) {
    use(out_used, e.from, e.out, "output");
    use(in_used, e.to, e.in, "input");
  }
  for (const auto& f : t.inputs) use(in_used, f.vertex, f.slot, "input");
  for (const auto& f : t.outputs) use(out_used, f.vertex, f.slot, "output");
  for (size_t v = 0; v < V; ++v) {
    for (int x : in_used[v])
      if (!x) throw InputError("dtree: vertex " + t.vertices[v].id + " has an unused input slot");
    for (int x : out_used[v])
      if (!x) throw InputError("dtree: vertex " + t.vertices[v].id + " has an unused output slot");
  }
  auto labels_ok = [](const std::vector<DioperadTree::Free>& f) {
    std::vector<int> l;
    for (const auto& x : f) l.push_back(x.label);
    std::sort(l.begin(), l.end());
    for (size_t i = 0; i < l.size(); ++i)
      if (l[i] != static_cast<int>(i) + 1) return false;
    return true;
  };
  if (!labels_ok(t.inputs)) throw InputError("dtree: input labels must be exactly 1..M");
  if (!labels_ok(t.outputs)) throw InputError("dtree: output labels must be exactly 1..N");
  if (t.edges.size() + 1 != V) throw InputError("dtree: not a tree (edge count)");
  std::vector<int> comp(V);
  for (size_t i = 0; i < V; ++i) comp[i] = static_cast<int>(i);
  std::function<int(int)> find = [&](int x) { return comp[static_cast<size_t>(x)] == x ? x : comp[static_cast<size_t>(x)] = find(comp[static_cast<size_t>(x)]); };
  for (const auto& e : t.edges) {
    int a = find(e.from), b = find(e.to);
    if (a == b) throw InputError("dtree: contains a cycle");
    comp[static_cast<size_t>(a)] = b;
  }
}

std::string format_dtree(const DioperadPresentation& d, const DioperadTree& t) {
  std::ostringstream os;
  os << "dtree{ ";
  for (const auto& v : t.vertices) os << v.id << "=" << d.gens[static_cast<size_t>(v.gen)].name << "; ";
  for (const auto& e : t.edges)
    os << "edge " << t.vertices[static_cast<size_t>(e.from)].id << ".out" << e.out + 1 << " -> "
       << t.vertices[static_cast<size_t>(e.to)].id << ".in" << e.in + 1 << "; ";
  for (const auto& f : t.inputs) os << "in " << t.vertices[static_cast<size_t>(f.vertex)].id << ".in" << f.slot + 1 << " = " << f.label << "; ";
  for (size_t i = 0; i < t.outputs.size(); ++i) {
    const auto& f = t.outputs[i];
    os << "out " << t.vertices[static_cast<size_t>(f.vertex)].id << ".out" << f.slot + 1 << " = " << f.label;
    os << (i + 1 < t.outputs.size() ? "; " : " ");
  }
  os << "}";
  return os.str();
}

// ---------------------------------------------------------------------------
// file format

bool is_dioperad_text(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string line;
  while (std::getline(is, line)) {
    auto h = line.find('#');
    if (h != std::string::npos) line.resize(h);
    std::string t = trim(line);
    if (t.empty()) continue;
    return t == "dioperad";
  }
  return false;
}

namespace {

LegPerm parse_sym(const DioperadGenerator& g, const std::string& s) {
  std::string t = trim(s);
  if (t.size() < 2 || t.front() != '(' || t.back() != ')') throw InputError("sym entries look like (INPERM|-; OUTPERM|-; SIGN)");
  auto parts = split(t.substr(1, t.size() - 2), ';');
  if (parts.size() != 3) throw InputError("sym entry needs three fields: " + s);
  LegPerm p;
  p.image.resize(static_cast<size_t>(g.legs()));
  auto perm = [&](const std::string& f, int k, int offset) {
    std::vector<int> v;
    if (f == "-") {
      for (int i = 1; i <= k; ++i) v.push_back(i);
    } else if (f.find(',') != std::string::npos) {
      for (const auto& x : split(f, ',')) v.push_back(to_int(x, "permutation"));
    } else {
      for (char c : f) {
        if (!std::isdigit(static_cast<unsigned char>(c))) throw InputError("bad permutation '" + f + "'");
        v.push_back(c - '0');
      }
    }
    if (static_cast<int>(v.size()) != k) throw InputError("permutation '" + f + "' has the wrong length for " + g.name);
    auto sorted = v;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < k; ++i)
      if (sorted[static_cast<size_t>(i)] != i + 1) throw InputError("'" + f + "' is not a permutation");
    for (int i = 0; i < k; ++i) p.image[static_cast<size_t>(offset + i)] = offset + v[static_cast<size_t>(i)] - 1;
  };
  perm(parts[0], g.m, 0);
  perm(parts[1], g.n, g.m);
  if (parts[2] == "1" || parts[2] == "+1")
    p.sign = 1;
  else if (parts[2] == "-1")
    p.sign = -1;
  else
    throw InputError("sym sign must be 1 or -1");
  return p;
}

DioperadGenerator parse_dgen(const std::string& rest) {
  auto colon = rest.find(':');
  if (colon == std::string::npos) throw InputError("expected 'dgen NAME : (M,N) ...'");
  DioperadGenerator g;
  g.name = trim(rest.substr(0, colon));
  std::string tail = trim(rest.substr(colon + 1));
  if (tail.empty() || tail.front() != '(') throw InputError("dgen " + g.name + ": expected (M,N)");
  auto close = tail.find(')');
  auto mn = split(tail.substr(1, close - 1), ',');
  if (mn.size() != 2) throw InputError("dgen " + g.name + ": expected (M,N)");
  g.m = to_int(mn[0], "M");
  g.n = to_int(mn[1], "N");
  if (g.m + g.n < 1) throw InputError("dgen " + g.name + ": needs at least one leg");
  if (g.m + g.n < 2) throw InputError("dgen " + g.name + ": corollas with a single leg are not supported");
  tail = trim(tail.substr(close + 1));
  while (!tail.empty()) {
    std::istringstream is(tail);
    std::string kw;
    is >> kw;
    tail = trim(tail.substr(kw.size()));
    if (kw == "sym") {
      while (!tail.empty() && tail.front() == '(') {
        auto c = tail.find(')');
        if (c == std::string::npos) throw InputError("dgen " + g.name + ": unclosed sym entry");
        g.symmetry.push_back(parse_sym(g, tail.substr(0, c + 1)));
        tail = trim(tail.substr(c + 1));
      }
    } else if (kw == "deg" || kw == "wt") {
      std::istringstream vs(tail);
      std::string v;
      vs >> v;
      int x = 0;
      try {
        x = std::stoi(v);
      } catch (const std::exception&) {
        throw InputError("dgen " + g.name + ": bad integer '" + v + "'");
      }
      (kw == "deg" ? g.hdegree : g.weight) = x;
      tail = trim(tail.substr(v.size()));
    } else {
      throw InputError("dgen " + g.name + ": unknown attribute '" + kw + "'");
    }
  }
  if (g.weight < 1) throw InputError("dgen " + g.name + ": weight must be positive");
  symmetry_group(g);
  return g;
}

DioperadRelation parse_drel(DioperadPresentation& d, const std::string& rest) {
  auto colon = rest.find(':');
  if (colon == std::string::npos) throw InputError("expected 'drel NAME : ... = 0'");
  DioperadRelation r;
  r.name = trim(rest.substr(0, colon));
  std::string body = trim(rest.substr(colon + 1));
  auto eq = body.rfind('=');
  if (eq == std::string::npos || trim(body.substr(eq + 1)) != "0") throw InputError("drel " + r.name + ": expected '= 0'");
  body = trim(body.substr(0, eq));
  size_t i = 0;
  bool first = true;
  while (i < body.size()) {
    while (i < body.size() && std::isspace(static_cast<unsigned char>(body[i]))) ++i;
    if (i >= body.size()) break;
    int sign = 1;
    if (body[i] == '+' || body[i] == '-') {
      sign = body[i] == '-' ? -1 : 1;
      ++i;
    } else if (!first) {
      throw InputError("drel " + r.name + ": expected '+' or '-' between terms");
    }
    first = false;
    auto tpos = body.find("dtree", i);
    if (tpos == std::string::npos) throw InputError("drel " + r.name + ": expected dtree{...}");
    std::string pre = trim(body.substr(i, tpos - i));
    Rational c = 1;
    if (!pre.empty()) {
      if (pre.back() != '*') throw InputError("drel " + r.name + ": expected COEFF * dtree");
      c = parse_rational(trim(pre.substr(0, pre.size() - 1)));
    }
    auto close = body.find('}', tpos);
    if (close == std::string::npos) throw InputError("drel " + r.name + ": unclosed dtree");
    r.terms.push_back({sign * c, parse_dtree(d, body.substr(tpos, close + 1 - tpos))});
    i = close + 1;
  }
  if (r.terms.empty()) throw InputError("drel " + r.name + ": no terms");
  for (const auto& t : r.terms)
    if (t.tree.input_count() != r.terms[0].tree.input_count() || t.tree.output_count() != r.terms[0].tree.output_count())
      throw InputError("drel " + r.name + ": terms have different arities");
  return r;
}

}  // namespace

DioperadPresentation parse_dioperad(std::string_view text) {
  // logical lines: a line starting with whitespace continues the previous one
  std::vector<std::pair<int, std::string>> lines;
  {
    std::istringstream is{std::string(text)};
    std::string raw;
    int n = 0;
    while (std::getline(is, raw)) {
      ++n;
      auto h = raw.find('#');
      if (h != std::string::npos) raw.resize(h);
      if (trim(raw).empty()) continue;
      if (std::isspace(static_cast<unsigned char>(raw[0])) && !lines.empty())
        lines.back().second += " " + trim(raw);
      else
        lines.emplace_back(n, trim(raw));
    }
  }
  DioperadPresentation d;
  bool header = false;
  for (const auto& [n, l] : lines) {
    try {
      std::istringstream is(l);
      std::string kw;
      is >> kw;
      std::string rest = trim(std::string_view(l).substr(kw.size()));
      if (kw == "dioperad") {
        header = true;
      } else if (!header) {
        throw InputError("expected 'dioperad' header");
      } else if (kw == "name") {
        d.name = rest;
      } else if (kw == "order") {
        d.order_line = rest;
      } else if (kw == "dgen") {
        auto g = parse_dgen(rest);
        if (d.index_of(g.name) >= 0) throw InputError("duplicate generator " + g.name);
        d.gens.push_back(std::move(g));
      } else if (kw == "drel") {
        d.rels.push_back(parse_drel(d, rest));
      } else {
        throw InputError("unknown directive '" + kw + "'");
      }
    } catch (const InputError& e) {
      throw InputError("line " + std::to_string(n) + ": " + e.what());
    }
  }
  if (!header) throw InputError("expected 'dioperad' header");
  return d;
}

std::string serialize_dioperad(const DioperadPresentation& d) {
  std::ostringstream os;
  os << "dioperad\n";
  if (!d.name.empty()) os << "name " << d.name << "\n";
  if (!d.order_line.empty()) os << "order " << d.order_line << "\n";
  for (const auto& g : d.gens) {
    os << "dgen " << g.name << " : (" << g.m << "," << g.n << ")";
    if (!g.symmetry.empty()) {
      os << " sym";
      for (const auto& s : g.symmetry) {
        os << " (";
        for (int i = 0; i < g.m; ++i) os << s.image[static_cast<size_t>(i)] + 1 << (i + 1 < g.m ? "," : "");
        if (g.m == 0) os << "-";
        os << ";";
        for (int i = 0; i < g.n; ++i) os << s.image[static_cast<size_t>(g.m + i)] - g.m + 1 << (i + 1 < g.n ? "," : "");
        if (g.n == 0) os << "-";
        os << ";" << s.sign << ")";
      }
    }
    if (g.hdegree) os << " deg " << g.hdegree;
    if (g.weight != 1) os << " wt " << g.weight;
    os << "\n";
  }
  for (const auto& r : d.rels) {
    os << "drel " << r.name << " :";
    bool first = true;
    for (const auto& t : r.terms) {
      Rational c = t.coef;
      if (!first) os << "\n   ";
      if (c < 0) {
        os << " - ";
        c = -c;
      } else {
        os << (first ? " " : " + ");
      }
      os << to_string(c) << " * " << format_dtree(d, t.tree);
      first = false;
    }
    os << " = 0\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// rerooting

RootLeg parse_root_leg(std::string_view s) {
  std::string t = trim(s);
  RootLeg r;
  std::string num;
  if (t.rfind("out", 0) == 0) {
    r.output = true;
    num = t.substr(3);
  } else if (t.rfind("in", 0) == 0) {
    r.output = false;
    num = t.substr(2);
  } else {
    throw InputError("root leg must look like outK or inK, got '" + t + "'");
  }
  r.label = to_int(num, "root label");
  return r;
}

namespace {

struct Attach {
  enum Kind { free_in, free_out, edge } kind;
  int label = 0;               // free legs
  int vertex = -1, leg = -1;   // edges: the other end
};

std::vector<std::vector<Attach>> attachments(const DioperadPresentation& d, const DioperadTree& t) {
  std::vector<std::vector<Attach>> a(t.vertices.size());
  for (size_t v = 0; v < t.vertices.size(); ++v) a[v].resize(static_cast<size_t>(d.gens[static_cast<size_t>(t.vertices[v].gen)].legs()));
  auto m_of = [&](int v) { return d.gens[static_cast<size_t>(t.vertices[static_cast<size_t>(v)].gen)].m; };
  for (const auto& e : t.edges) {
    int lf = m_of(e.from) + e.out, lt = e.in;
    a[static_cast<size_t>(e.from)][static_cast<size_t>(lf)] = {Attach::edge, 0, e.to, lt};
    a[static_cast<size_t>(e.to)][static_cast<size_t>(lt)] = {Attach::edge, 0, e.from, lf};
  }
  for (const auto& f : t.inputs) a[static_cast<size_t>(f.vertex)][static_cast<size_t>(f.slot)] = {Attach::free_in, f.label, -1, -1};
  for (const auto& f : t.outputs) a[static_cast<size_t>(f.vertex)][static_cast<size_t>(m_of(f.vertex) + f.slot)] = {Attach::free_out, f.label, -1, -1};
  return a;
}

}  // namespace

RootedNode reroot(const DioperadPresentation& d, const DioperadTree& t, RootLeg root) {
  validate_tree(d, t);
  auto att = attachments(d, t);
  int rv = -1, rl = -1;
  for (size_t v = 0; v < att.size(); ++v)
    for (size_t l = 0; l < att[v].size(); ++l) {
      const auto& a = att[v][l];
      if ((a.kind == Attach::free_out && root.output && a.label == root.label) || (a.kind == Attach::free_in && !root.output && a.label == root.label)) {
        rv = static_cast<int>(v);
        rl = static_cast<int>(l);
      }
    }
  if (rv < 0) throw InputError(std::string("root ") + (root.output ? "out" : "in") + std::to_string(root.label) + " is not a leg of the tree");
  std::function<RootedNode(int, int)> build = [&](int v, int from) {
    const auto& g = d.gens[static_cast<size_t>(t.vertices[static_cast<size_t>(v)].gen)];
    RootedNode n;
    n.vertex = v;
    n.gen = t.vertices[static_cast<size_t>(v)].gen;
    n.root_leg = from;
    n.color = g.is_input(from) ? Color::dotted : Color::straight;
    for (int l = 0; l < g.legs(); ++l) {
      if (l == from) continue;
      const auto& a = att[static_cast<size_t>(v)][static_cast<size_t>(l)];
      n.child_legs.push_back(l);
      if (a.kind == Attach::edge) {
        n.children.push_back(build(a.vertex, a.leg));
      } else {
        RootedNode leaf;
        leaf.leaf = true;
        leaf.leg = {a.kind == Attach::free_out, a.label};
        leaf.color = a.kind == Attach::free_out ? Color::dotted : Color::straight;
        n.children.push_back(std::move(leaf));
      }
    }
    return n;
  };
  return build(rv, rl);
}

std::string format_rooted(const DioperadPresentation& d, const RootedNode& r) {
  std::string out;
  std::function<void(const RootedNode&)> go = [&](const RootedNode& n) {
    if (n.leaf) {
      out += (n.leg.output ? "out" : "in") + std::to_string(n.leg.label);
    } else {
      out += d.gens[static_cast<size_t>(n.gen)].name;
      out += "(";
      for (size_t i = 0; i < n.children.size(); ++i) {
        if (i) out += ",";
        go(n.children[i]);
      }
      out += ")";
    }
    out += "/";
    out += color_char(n.color);
  };
  go(r);
  return out;
}

DioperadTree unroot(const DioperadPresentation& d, const RootedNode& r, RootLeg root) {
  DioperadTree t;
  std::function<int(const RootedNode&)> go = [&](const RootedNode& n) -> int {
    int v = static_cast<int>(t.vertices.size());
    t.vertices.push_back({"u" + std::to_string(v), n.gen});
    const auto& g = d.gens[static_cast<size_t>(n.gen)];
    for (size_t i = 0; i < n.children.size(); ++i) {
      int leg = n.child_legs[i];
      const auto& c = n.children[i];
      if (c.leaf) {
        if (g.is_input(leg))
          t.inputs.push_back({v, leg, c.leg.label});
        else
          t.outputs.push_back({v, leg - g.m, c.leg.label});
        continue;
      }
      int u = go(c);
      const auto& gu = d.gens[static_cast<size_t>(c.gen)];
      if (g.is_input(leg))
        t.edges.push_back({u, c.root_leg - gu.m, v, leg});
      else
        t.edges.push_back({v, leg - g.m, u, c.root_leg});
    }
    return v;
  };
  int rv = go(r);
  const auto& g = d.gens[static_cast<size_t>(r.gen)];
  if (root.output)
    t.outputs.push_back({rv, r.root_leg - g.m, root.label});
  else
    t.inputs.push_back({rv, r.root_leg, root.label});
  validate_tree(d, t);
  return t;
}

// ---------------------------------------------------------------------------
// generators

std::vector<ColoredGenerator> psi_generators(const DioperadPresentation& d) {
  std::vector<ColoredGenerator> out;
  for (size_t gi = 0; gi < d.gens.size(); ++gi) {
    const auto& g = d.gens[gi];
    auto H = symmetry_group(g);
    std::vector<int> order;
    for (int l = g.m; l < g.legs(); ++l) order.push_back(l);
    for (int l = 0; l < g.m; ++l) order.push_back(l);
    std::set<int> covered;
    for (int r : order) {
      if (covered.count(r)) continue;
      int stab = 0;
      bool anti = false;
      for (const auto& h : H) {
        covered.insert(h.image[static_cast<size_t>(r)]);
        if (h.image[static_cast<size_t>(r)] == r) {
          ++stab;
          if (h.sign < 0) anti = true;
        }
      }
      ColoredGenerator c;
      c.dgen = static_cast<int>(gi);
      c.root_leg = r;
      c.sig.output = g.is_input(r) ? Color::dotted : Color::straight;
      for (int l = 0; l < g.legs(); ++l)
        if (l != r) c.sig.inputs.push_back(g.is_input(l) ? Color::straight : Color::dotted);
      c.stabilizer_order = stab;
      c.antisymmetric = anti;
      c.name = g.name + (g.is_input(r) ? "_in" : "_out") + std::to_string(g.is_input(r) ? r + 1 : r - g.m + 1);
      out.push_back(std::move(c));
    }
  }
  return out;
}

ShuffleTable shuffle_generators(const DioperadPresentation& d) {
  ShuffleTable tab;
  tab.alpha.mode = Mode::shuffle;
  for (size_t gi = 0; gi < d.gens.size(); ++gi) {
    const auto& g = d.gens[gi];
    auto H = symmetry_group(g);
    std::vector<int> roots;
    for (int l = g.m; l < g.legs(); ++l) roots.push_back(l);
    for (int l = 0; l < g.m; ++l) roots.push_back(l);
    for (int r : roots) {
      std::vector<int> rest;
      for (int l = 0; l < g.legs(); ++l)
        if (l != r) rest.push_back(l);
      do {
        auto key = std::make_tuple(static_cast<int>(gi), r, rest);
        if (tab.entry.count(key)) continue;
        Generator sg;
        std::string colors;
        for (int l : rest) {
          Color c = g.is_input(l) ? Color::straight : Color::dotted;
          sg.sig.inputs.push_back(c);
          colors += color_char(c);
        }
        sg.sig.output = g.is_input(r) ? Color::dotted : Color::straight;
        std::string base = g.name + "_" + colors + "_" + color_char(sg.sig.output);
        sg.name = base;
        for (int k = 2; tab.alpha.index_of(sg.name) >= 0; ++k) sg.name = base + "_" + std::to_string(k);
        sg.weight = g.weight;
        sg.hdegree = g.hdegree;
        int idx = tab.alpha.size();
        tab.alpha.gens.push_back(sg);
        for (const auto& h : H) {
          std::vector<int> img;
          for (int l : rest) img.push_back(h.image[static_cast<size_t>(l)]);
          auto k2 = std::make_tuple(static_cast<int>(gi), h.image[static_cast<size_t>(r)], img);
          auto [it, fresh] = tab.entry.emplace(k2, std::make_pair(idx, h.sign));
          if (!fresh && it->second != std::make_pair(idx, h.sign))
            throw InputError("generator " + g.name + ": sign clash while expanding to shuffle generators");
        }
      } while (std::next_permutation(rest.begin(), rest.end()));
    }
  }
  return tab;
}

std::pair<Monomial, int> rooted_to_shuffle(const DioperadPresentation& d, const ShuffleTable& table, const RootedNode& r,
                                           RootLeg root, int inputs, int outputs, const std::vector<int>& perm) {
  const int rem_in = inputs - (root.output ? 0 : 1);
  auto linear = [&](RootLeg leg) {
    int l;
    if (!leg.output) {
      l = leg.label - ((!root.output && root.label < leg.label) ? 1 : 0);
    } else {
      l = rem_in + leg.label - ((root.output && root.label < leg.label) ? 1 : 0);
    }
    return perm.empty() ? l : perm[static_cast<size_t>(l - 1)];
  };
  (void)outputs;
  int sign = 1;
  struct Built {
    std::vector<std::int32_t> code;
    int min;
  };
  std::function<Built(const RootedNode&)> go = [&](const RootedNode& n) -> Built {
    if (n.leaf) {
      int l = linear(n.leg);
      return {{Monomial::leaf_code(l, n.color)}, l};
    }
    std::vector<Built> ch;
    for (const auto& c : n.children) ch.push_back(go(c));
    std::vector<size_t> idx(ch.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return ch[a].min < ch[b].min; });
    std::vector<int> legs;
    for (size_t i : idx) legs.push_back(n.child_legs[i]);
    auto it = table.entry.find(std::make_tuple(n.gen, n.root_leg, legs));
    if (it == table.entry.end()) throw InputError("no shuffle generator for a corolla of " + d.gens[static_cast<size_t>(n.gen)].name);
    sign *= it->second.second;
    Built b;
    b.code.push_back(it->second.first);
    b.min = 1 << 30;
    for (size_t i : idx) {
      b.code.insert(b.code.end(), ch[i].code.begin(), ch[i].code.end());
      b.min = std::min(b.min, ch[i].min);
    }
    return b;
  };
  Built b = go(r);
  return {Monomial{std::move(b.code)}, sign};
}

Presentation shuffle_expand(const DioperadPresentation& d) {
  ShuffleTable tab = shuffle_generators(d);
  Presentation p;
  p.name = d.name;
  p.alpha = tab.alpha;
  if (d.order_line.empty()) throw InputError("dioperad " + d.name + ": an order line is needed to orient the expanded relations");
  {
    std::istringstream is(d.order_line);
    std::string kind, w;
    is >> kind;
    while (is >> w) p.order_names.push_back(w);
    p.order = MonomialOrder::make(p.alpha, parse_order_kind(kind), p.order_names);
  }
  struct Block {
    std::vector<std::pair<std::string, Polynomial>> rows;
  };
  std::map<std::pair<int, Signature>, Block> blocks;
  for (const auto& rel : d.rels) {
    const int M = rel.terms[0].tree.input_count(), N = rel.terms[0].tree.output_count();
    std::vector<RootLeg> roots;
    for (int j = 1; j <= N; ++j) roots.push_back({true, j});
    for (int i = 1; i <= M; ++i) roots.push_back({false, i});
    for (const auto& root : roots) {
      std::vector<RootedNode> rooted;
      for (const auto& t : rel.terms) rooted.push_back(reroot(d, t.tree, root));
      std::vector<int> perm(static_cast<size_t>(M + N - 1));
      for (size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i) + 1;
      do {
        std::vector<Term> raw;
        for (size_t k = 0; k < rooted.size(); ++k) {
          auto [m, s] = rooted_to_shuffle(d, tab, rooted[k], root, M, N, perm);
          raw.push_back({rel.terms[k].coef * s, std::move(m)});
        }
        Polynomial poly = canonicalize_polynomial(p.alpha, std::move(raw));
        if (poly.is_zero()) continue;
        const Monomial& m0 = poly.terms().front().mono;
        blocks[{weight(p.alpha, m0), signature(p.alpha, m0)}].rows.emplace_back(rel.name, std::move(poly));
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  }
  std::map<std::string, int> counter;
  for (auto& [key, block] : blocks) {
    std::vector<Monomial> cols;
    {
      std::set<Monomial> s;
      for (const auto& [n, poly] : block.rows)
        for (const auto& t : poly.terms()) s.insert(t.mono);
      cols.assign(s.begin(), s.end());
    }
    std::sort(cols.begin(), cols.end(), [&](const Monomial& a, const Monomial& b) { return compare_unchecked(p.alpha, *p.order, a, b) < 0; });
    std::map<Monomial, int> index;
    for (size_t i = 0; i < cols.size(); ++i) index[cols[i]] = static_cast<int>(i);
    Eliminator elim;
    std::map<int, std::string> origin;
    for (const auto& [n, poly] : block.rows) {
      std::vector<std::pair<int, Rational>> row;
      for (const auto& t : poly.terms()) row.emplace_back(index[t.mono], t.coef);
      int piv = elim.add(make_row(std::move(row)));
      if (piv >= 0) origin[piv] = n;
    }
    for (const auto& row : elim.reduced_basis()) {
      int piv = row.back().first;
      const std::string& n = origin[piv];
      RewriteRule r;
      r.name = n + "_" + std::to_string(++counter[n]);
      r.lhs = cols[static_cast<size_t>(piv)];
      std::vector<Term> rhs;
      for (size_t k = 0; k + 1 < row.size(); ++k) rhs.push_back({-row[k].second, cols[static_cast<size_t>(row[k].first)]});
      r.rhs = Polynomial::from_terms(std::move(rhs));
      p.rules.push_back(std::move(r));
    }
  }
  check_certificate(p);
  return p;
}

}  // namespace diop
