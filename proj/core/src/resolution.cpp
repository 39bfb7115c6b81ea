#include "diop/resolution.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "diop/enumerate.hpp"

namespace diop {

bool IEChain::operator==(const IEChain& o) const {
  if (base != o.base || rules != o.rules || divisors.size() != o.divisors.size()) return false;
  for (size_t i = 0; i < divisors.size(); ++i)
    if (divisors[i].sorted_image() != o.divisors[i].sorted_image()) return false;
  return true;
}

std::vector<IEChain> enumerate_chains(const Presentation& q, const Signature& sig, int weight, size_t guard) {
  if (!q.is_monomial()) throw InputError("inclusion-exclusion complex needs a monomial presentation");
  std::vector<TreeView> patterns;
  for (const auto& r : q.rules) patterns.emplace_back(q.alpha, r.lhs);

  std::vector<IEChain> out;
  for (const auto& m : enumerate_monomials(q.alpha, sig, weight, guard)) {
    TreeView host(q.alpha, m);
    std::vector<std::tuple<std::vector<int>, int, Embedding>> divs;
    std::set<std::pair<std::vector<int>, int>> seen;
    for (size_t r = 0; r < patterns.size(); ++r)
      for (auto& e : find_divisors(host, patterns[r])) {
        auto key = std::make_pair(e.sorted_image(), static_cast<int>(r));
        if (seen.insert(key).second) divs.emplace_back(key.first, key.second, std::move(e));
      }
    std::sort(divs.begin(), divs.end(), [](const auto& a, const auto& b) {
      return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
    });
    if (divs.size() > 24) throw GuardExceeded("too many divisors in " + format_term(q.alpha, m));
    size_t subsets = size_t{1} << divs.size();
    if (guard > 0 && out.size() + subsets > guard) throw GuardExceeded("inclusion-exclusion block exceeds guard");
    for (size_t mask = 0; mask < subsets; ++mask) {
      IEChain c;
      c.base = m;
      for (size_t i = 0; i < divs.size(); ++i)
        if (mask >> i & 1u) {
          c.divisors.push_back(std::get<2>(divs[i]));
          c.rules.push_back(std::get<1>(divs[i]));
        }
      out.push_back(std::move(c));
    }
  }
  return out;
}

std::vector<std::pair<int, IEChain>> differential(const IEChain& c) {
  if (c.hdeg() == 0) throw InputError("differential of a degree-zero chain");
  std::vector<std::pair<int, IEChain>> out;
  for (int i = 0; i < c.hdeg(); ++i) {
    IEChain f = c;
    f.divisors.erase(f.divisors.begin() + i);
    f.rules.erase(f.rules.begin() + i);
    out.emplace_back(i % 2 == 0 ? 1 : -1, std::move(f));
  }
  return out;
}

bool is_generator(const Alphabet& alpha, const IEChain& c) {
  TreeView v(alpha, c.base);
  const auto& internal = v.internal();
  if (c.divisors.empty()) return internal.size() == 1;
  std::vector<std::set<int>> images;
  for (const auto& e : c.divisors) images.emplace_back(e.image.begin(), e.image.end());
  for (int pos : internal) {
    bool covered = std::any_of(images.begin(), images.end(), [&](const auto& s) { return s.count(pos) > 0; });
    if (!covered) return false;
    int par = v.parent(pos);
    if (par < 0) continue;
    bool edge = std::any_of(images.begin(), images.end(),
                            [&](const auto& s) { return s.count(pos) > 0 && s.count(par) > 0; });
    if (!edge) return false;
  }
  return true;
}

namespace {

struct ChainKey {
  std::vector<std::int32_t> code;
  std::vector<std::pair<std::vector<int>, int>> divs;
  auto operator<=>(const ChainKey&) const = default;
};

ChainKey key_of(const IEChain& c) {
  ChainKey k{c.base.code, {}};
  for (size_t i = 0; i < c.divisors.size(); ++i) k.divs.emplace_back(c.divisors[i].sorted_image(), c.rules[i]);
  return k;
}

}  // namespace

ChainComplexBlock build_block(const Presentation& q, const Signature& sig, int weight, size_t guard) {
  ChainComplexBlock b;
  b.sig = sig;
  b.weight = weight;
  for (auto& c : enumerate_chains(q, sig, weight, guard)) {
    size_t k = static_cast<size_t>(c.hdeg());
    if (b.bases.size() <= k) b.bases.resize(k + 1);
    b.bases[k].push_back(std::move(c));
  }
  b.boundary.resize(b.bases.size());
  for (size_t k = 1; k < b.bases.size(); ++k) {
    std::map<ChainKey, int> index;
    for (size_t i = 0; i < b.bases[k - 1].size(); ++i) index[key_of(b.bases[k - 1][i])] = static_cast<int>(i);
    for (const auto& c : b.bases[k]) {
      std::vector<std::pair<int, Rational>> row;
      for (auto& [s, f] : differential(c)) row.emplace_back(index.at(key_of(f)), Rational(s));
      b.boundary[k].push_back(make_row(std::move(row)));
    }
  }
  return b;
}

bool d_squared_zero(const ChainComplexBlock& b) {
  for (size_t k = 2; k < b.boundary.size(); ++k)
    for (const auto& row : b.boundary[k]) {
      std::map<int, Rational> acc;
      for (const auto& [j, c] : row)
        for (const auto& [i, c2] : b.boundary[k - 1][static_cast<size_t>(j)]) acc[i] += c * c2;
      for (const auto& [i, v] : acc)
        if (v != 0) return false;
    }
  return true;
}

std::vector<std::pair<int, int>> homology_ranks(const ChainComplexBlock& b) {
  std::vector<int> rank(b.bases.size() + 1, 0);
  for (size_t k = 1; k < b.boundary.size(); ++k) rank[k] = rank_of(b.boundary[k]);
  std::vector<std::pair<int, int>> out;
  for (size_t k = 0; k < b.bases.size(); ++k) {
    int dim = static_cast<int>(b.bases[k].size());
    if (dim == 0) continue;
    out.emplace_back(static_cast<int>(k), dim - rank[k] - rank[k + 1]);
  }
  return out;
}

std::vector<std::pair<int, int>> homology_ranks(const Presentation& q, const Signature& sig, int weight,
                                                size_t guard) {
  return homology_ranks(build_block(q, sig, weight, guard));
}

int generator_count(const Alphabet& alpha, const ChainComplexBlock& b) {
  int n = 0;
  for (const auto& level : b.bases)
    for (const auto& c : level)
      if (is_generator(alpha, c)) ++n;
  return n;
}

}  // namespace diop
