#include "diop/enumerate.hpp"

#include <bit>
#include <functional>

#include "diop/rational.hpp"
#include "diop/rewrite.hpp"

namespace diop {

Enumerator::Enumerator(const Alphabet& alpha, Signature sig, const Rewriter* filter, size_t guard)
    : alpha_(alpha), sig_(std::move(sig)), filter_(filter), guard_(guard) {
  if (sig_.arity() > 30) throw InputError("arity too large to enumerate");
}

const std::vector<Monomial>& Enumerator::block(int weight) {
  if (sig_.arity() == 0) {
    static const std::vector<Monomial> none;
    return none;
  }
  std::uint32_t full = (sig_.arity() == 32) ? ~0u : ((1u << sig_.arity()) - 1);
  return get(full, sig_.output, weight);
}

const std::vector<Monomial>& Enumerator::get(std::uint32_t mask, Color c, int w) {
  std::uint64_t key = (static_cast<std::uint64_t>(mask) << 32) | (static_cast<std::uint64_t>(w) << 1) | static_cast<std::uint64_t>(c);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  std::vector<Monomial> out;
  if (w == 0) {
    if (std::popcount(mask) == 1) {
      int label = std::countr_zero(mask) + 1;
      if (sig_.inputs[static_cast<size_t>(label - 1)] == c) out.push_back(Monomial{{Monomial::leaf_code(label, c)}});
    }
  } else {
    std::vector<std::uint32_t> masks;
    std::vector<const std::vector<Monomial>*> parts;
    for (int g = 0; g < alpha_.size(); ++g) {
      const Generator& gen = alpha_.gen(g);
      if (gen.sig.output != c || gen.weight > w || gen.arity() > std::popcount(mask)) continue;
      masks.clear();
      parts.clear();
      children(gen, mask, 0, w - gen.weight, masks, parts, g, out);
    }
  }
  if (guard_ && out.size() > guard_)
    throw GuardExceeded("block enumeration exceeds guard of " + std::to_string(guard_) + " monomials");
  return memo_.emplace(key, std::move(out)).first->second;
}

void Enumerator::children(const Generator& g, std::uint32_t rest, int j, int wrest, std::vector<std::uint32_t>& masks,
                          std::vector<const std::vector<Monomial>*>& parts, int gen, std::vector<Monomial>& out) {
  const int k = g.arity();
  if (j == k) {
    if (rest == 0 && wrest == 0) emit(gen, parts, out);
    return;
  }
  const int left = k - j - 1;  // blocks still needed after this one
  Color slot = g.sig.inputs[static_cast<size_t>(j)];
  auto try_block = [&](std::uint32_t b) {
    if (std::popcount(rest & ~b) < left) return;
    for (int wj = 0; wj <= wrest; ++wj) {
      const auto& sub = get(b, slot, wj);
      if (sub.empty()) continue;
      parts.push_back(&sub);
      children(g, rest & ~b, j + 1, wrest - wj, masks, parts, gen, out);
      parts.pop_back();
    }
  };
  std::uint32_t low = rest & (~rest + 1);
  if (alpha_.mode == Mode::planar) {
    // consecutive block starting at the lowest remaining label
    std::uint32_t b = 0;
    for (std::uint32_t bit = low; bit && (rest & bit); bit <<= 1) {
      b |= bit;
      if (j == k - 1 && b != rest) continue;
      try_block(b);
    }
  } else {
    if (j == k - 1) {
      try_block(rest);
      return;
    }
    std::uint32_t others = rest & ~low;
    // every subset of the remaining labels, together with the minimum
    for (std::uint32_t s = others;; s = (s - 1) & others) {
      try_block(low | s);
      if (s == 0) break;
    }
  }
}

void Enumerator::emit(int gen, const std::vector<const std::vector<Monomial>*>& parts, std::vector<Monomial>& out) {
  std::vector<size_t> idx(parts.size(), 0);
  while (true) {
    Monomial m;
    m.code.push_back(gen);
    for (size_t i = 0; i < parts.size(); ++i) {
      const auto& c = (*parts[i])[idx[i]].code;
      m.code.insert(m.code.end(), c.begin(), c.end());
    }
    bool keep = true;
    if (filter_) {
      TreeView v(alpha_, m);
      keep = !filter_->reducible_at_root(v);
    }
    if (keep) out.push_back(std::move(m));
    size_t i = 0;
    for (; i < parts.size(); ++i) {
      if (++idx[i] < parts[i]->size()) break;
      idx[i] = 0;
    }
    if (i == parts.size()) break;
  }
}

std::vector<Monomial> enumerate_monomials(const Alphabet& alpha, const Signature& sig, int weight, size_t guard) {
  Enumerator e(alpha, sig, nullptr, guard);
  return e.block(weight);
}

int weight_bound(const Alphabet& alpha, int arity) {
  // longest chain of unary generators, following colors
  std::vector<int> unary;
  int maxwt = 1;
  for (int g = 0; g < alpha.size(); ++g) {
    maxwt = std::max(maxwt, alpha.gen(g).weight);
    if (alpha.gen(g).arity() == 1) unary.push_back(g);
  }
  // longest path in a graph on two colors; a cycle means unbounded chains
  int longest = 0;
  std::function<int(Color, int)> walk = [&](Color c, int depth) -> int {
    if (depth > static_cast<int>(unary.size())) throw InputError("unary generators form a cycle; weights are unbounded");
    int best = 0;
    for (int g : unary)
      if (alpha.gen(g).sig.inputs[0] == c) best = std::max(best, 1 + walk(alpha.gen(g).sig.output, depth + 1));
    return best;
  };
  longest = std::max(walk(Color::straight, 0), walk(Color::dotted, 0));
  return maxwt * ((arity - 1) + longest * (2 * arity - 1));
}

std::vector<Signature> all_signatures(int arity) {
  std::vector<Signature> out;
  for (int out_c = 0; out_c < 2; ++out_c)
    for (std::uint32_t bits = 0; bits < (1u << arity); ++bits) {
      Signature s;
      s.output = static_cast<Color>(out_c);
      for (int i = 0; i < arity; ++i) s.inputs.push_back(static_cast<Color>((bits >> i) & 1u));
      out.push_back(std::move(s));
    }
  return out;
}

}  // namespace diop
