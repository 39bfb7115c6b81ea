#include "diop/series.hpp"

#include <sstream>
#include <vector>

namespace diop {

QPoly::QPoly(Rational c, int e) {
  if (c != 0) c_.emplace(e, std::move(c));
}

Rational QPoly::at(int e) const {
  auto it = c_.find(e);
  return it == c_.end() ? Rational(0) : it->second;
}

bool QPoly::has_negative_coefficient() const {
  for (const auto& [e, c] : c_)
    if (c < 0) return true;
  return false;
}

QPoly QPoly::substitute_neg_q() const {
  QPoly r = *this;
  for (auto& [e, c] : r.c_)
    if (e % 2 != 0) c = -c;
  return r;
}

std::string QPoly::str() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c0] : c_) {
    Rational c = c0;
    if (c < 0) {
      os << (first ? "-" : " - ");
      c = -c;
    } else if (!first) {
      os << " + ";
    }
    first = false;
    if (e == 0) {
      os << to_string(c);
      continue;
    }
    if (c != 1) os << to_string(c) << "*";
    os << "q";
    if (e != 1) os << "^" << e;
  }
  return os.str();
}

QPoly& QPoly::operator+=(const QPoly& o) {
  for (const auto& [e, c] : o.c_) {
    auto [it, fresh] = c_.emplace(e, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) c_.erase(it);
    }
  }
  return *this;
}

QPoly& QPoly::operator-=(const QPoly& o) { return *this += -o; }

QPoly QPoly::operator-() const {
  QPoly r = *this;
  for (auto& [e, c] : r.c_) c = -c;
  return r;
}

QPoly operator*(const QPoly& a, const QPoly& b) {
  QPoly r;
  for (const auto& [ea, ca] : a.c_)
    for (const auto& [eb, cb] : b.c_) r += QPoly(ca * cb, ea + eb);
  return r;
}

// ---------------------------------------------------------------------------

QPoly Series::at(int m, int n) const {
  auto it = c_.find({m, n});
  return it == c_.end() ? QPoly() : it->second;
}

void Series::add(int m, int n, const QPoly& v) {
  if (m + n > bound_ || v.is_zero()) return;
  auto [it, fresh] = c_.emplace(std::make_pair(m, n), v);
  if (!fresh) {
    it->second += v;
    if (it->second.is_zero()) c_.erase(it);
  }
}

Series Series::x(int bound) {
  Series s(bound);
  s.add(1, 0, QPoly(1));
  return s;
}

Series Series::y(int bound) {
  Series s(bound);
  s.add(0, 1, QPoly(1));
  return s;
}

Series Series::constant(int bound, const QPoly& c) {
  Series s(bound);
  s.add(0, 0, c);
  return s;
}

Series& Series::operator+=(const Series& o) {
  bound_ = std::min(bound_, o.bound_);
  for (auto it = c_.begin(); it != c_.end();) {
    if (it->first.first + it->first.second > bound_)
      it = c_.erase(it);
    else
      ++it;
  }
  for (const auto& [k, v] : o.c_) add(k.first, k.second, v);
  return *this;
}

Series& Series::operator-=(const Series& o) {
  Series neg(o.bound_);
  for (const auto& [k, v] : o.c_) neg.add(k.first, k.second, -v);
  return *this += neg;
}

Series operator*(const Series& a, const Series& b) {
  Series r(std::min(a.bound_, b.bound_));
  for (const auto& [ka, va] : a.c_)
    for (const auto& [kb, vb] : b.c_) {
      int m = ka.first + kb.first, n = ka.second + kb.second;
      if (m + n <= r.bound_) r.add(m, n, va * vb);
    }
  return r;
}

Series operator*(const QPoly& c, const Series& a) {
  Series r(a.bound_);
  for (const auto& [k, v] : a.c_) r.add(k.first, k.second, c * v);
  return r;
}

Series Series::partial_x() const {
  Series r(bound_ - 1);
  for (const auto& [k, v] : c_)
    if (k.first > 0) r.add(k.first - 1, k.second, QPoly(k.first) * v);
  return r;
}

Series Series::partial_y() const {
  Series r(bound_ - 1);
  for (const auto& [k, v] : c_)
    if (k.second > 0) r.add(k.first, k.second - 1, QPoly(k.second) * v);
  return r;
}

Series Series::substitute_neg_q() const {
  Series r(bound_);
  for (const auto& [k, v] : c_) r.add(k.first, k.second, v.substitute_neg_q());
  return r;
}

Series Series::truncate(int bound) const {
  Series r(std::min(bound, bound_));
  for (const auto& [k, v] : c_) r.add(k.first, k.second, v);
  return r;
}

Series Series::homogeneous(int d) const {
  Series r(bound_);
  for (const auto& [k, v] : c_)
    if (k.first + k.second == d) r.add(k.first, k.second, v);
  return r;
}

std::string Series::str() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : c_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << v.str() << ")";
    if (k.first) os << "*x" << (k.first > 1 ? "^" + std::to_string(k.first) : "");
    if (k.second) os << "*y" << (k.second > 1 ? "^" + std::to_string(k.second) : "");
  }
  return os.str();
}

Series series_from_dims(const std::map<std::pair<int, int>, QPoly>& dims, int bound) {
  Series s(bound);
  for (const auto& [k, v] : dims) {
    if (k.first + k.second > bound) continue;
    Rational inv = Rational(1) / Rational(factorial(static_cast<unsigned>(k.first)) * factorial(static_cast<unsigned>(k.second)));
    s.add(k.first, k.second, QPoly(inv) * v);
  }
  return s;
}

Series compose(const Series& f, const SeriesPair& g) {
  int bound = std::min({f.bound(), g.first.bound(), g.second.bound()});
  if (!g.first.at(0, 0).is_zero() || !g.second.at(0, 0).is_zero())
    throw InputError("compose: inner series must have zero constant term");
  std::vector<Series> p1{Series::constant(bound, QPoly(1))}, p2{Series::constant(bound, QPoly(1))};
  for (int i = 1; i <= bound; ++i) {
    p1.push_back(p1.back() * g.first.truncate(bound));
    p2.push_back(p2.back() * g.second.truncate(bound));
  }
  Series r(bound);
  for (const auto& [k, v] : f.coeffs()) {
    if (k.first + k.second > bound) continue;
    r += v * (p1[static_cast<size_t>(k.first)] * p2[static_cast<size_t>(k.second)]);
  }
  return r;
}

SeriesPair compose_pair(const SeriesPair& f, const SeriesPair& g) { return {compose(f.first, g), compose(f.second, g)}; }

SeriesPair invert_pair(const SeriesPair& f) {
  const int bound = std::min(f.first.bound(), f.second.bound());
  QPoly a = f.first.at(1, 0), b = f.first.at(0, 1), c = f.second.at(1, 0), d = f.second.at(0, 1);
  if (!f.first.at(0, 0).is_zero() || !f.second.at(0, 0).is_zero()) throw InputError("invert_pair: nonzero constant term");
  QPoly det = a * d - b * c;
  if (det.coeffs().size() != 1 || det.coeffs().begin()->first != 0) throw InputError("singular linear part");
  Rational dinv = Rational(1) / det.coeffs().begin()->second;
  // L^-1 = adj(L) / det
  QPoly i11 = QPoly(dinv) * d, i12 = QPoly(-dinv) * b, i21 = QPoly(-dinv) * c, i22 = QPoly(dinv) * a;
  auto higher = [&](const Series& s) {
    Series h = s;
    h -= s.homogeneous(1);
    return h;
  };
  SeriesPair hf{higher(f.first), higher(f.second)};
  Series u = Series::x(bound), v = Series::y(bound);
  SeriesPair g{Series(bound), Series(bound)};
  for (int it = 0; it <= bound; ++it) {
    Series r1 = u - compose(hf.first, g);
    Series r2 = v - compose(hf.second, g);
    SeriesPair next{i11 * r1 + i12 * r2, i21 * r1 + i22 * r2};
    bool same = next.first.coeffs() == g.first.coeffs() && next.second.coeffs() == g.second.coeffs();
    g = std::move(next);
    if (same) break;
  }
  return g;
}

KoszulCheck koszul_series_check(const Series& chi_p, const Series& chi_dual) {
  SeriesPair f{chi_p.partial_y(), chi_p.partial_x()};
  Series dq = chi_dual.substitute_neg_q();
  SeriesPair g{dq.partial_y(), dq.partial_x()};
  SeriesPair h = compose_pair(g, f);
  int bound = std::min(h.first.bound(), h.second.bound());
  Series ex = Series::x(bound), ey = Series::y(bound);
  KoszulCheck res;
  res.pass = true;
  for (int comp = 0; comp < 2 && res.pass; ++comp) {
    Series diff = (comp == 0 ? h.first : h.second) - (comp == 0 ? ex : ey);
    for (int d = 0; d <= bound && res.pass; ++d)
      for (int m = 0; m <= d; ++m) {
        QPoly r = diff.at(m, d - m);
        if (!r.is_zero()) {
          res.pass = false;
          res.residual = std::make_tuple(comp + 1, m, d - m, r);
          break;
        }
      }
  }
  return res;
}

}  // namespace diop
