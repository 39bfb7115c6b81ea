#include "diop/linalg.hpp"

#include <algorithm>

namespace diop {

SparseRow make_row(std::vector<std::pair<int, Rational>> entries) {
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseRow out;
  for (auto& e : entries) {
    if (!out.empty() && out.back().first == e.first)
      out.back().second += e.second;
    else
      out.push_back(std::move(e));
    if (out.back().second == 0) out.pop_back();
  }
  return out;
}

namespace {

// row - c * other
SparseRow axpy(const SparseRow& row, const Rational& c, const SparseRow& other) {
  SparseRow out;
  out.reserve(row.size() + other.size());
  size_t i = 0, j = 0;
  while (i < row.size() || j < other.size()) {
    if (j == other.size() || (i < row.size() && row[i].first < other[j].first)) {
      out.push_back(row[i++]);
    } else if (i == row.size() || other[j].first < row[i].first) {
      out.emplace_back(other[j].first, -c * other[j].second);
      ++j;
    } else {
      Rational v = row[i].second - c * other[j].second;
      if (v != 0) out.emplace_back(row[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

SparseRow Eliminator::reduce(SparseRow row) const {
  while (!row.empty()) {
    auto it = pivots_.find(row.back().first);
    if (it == pivots_.end()) break;
    Rational c = row.back().second;
    row = axpy(row, c, it->second);
  }
  return row;
}

int Eliminator::add(SparseRow row) {
  row = reduce(std::move(row));
  if (row.empty()) return -1;
  Rational lead = row.back().second;
  if (lead != 1)
    for (auto& e : row) e.second /= lead;
  int col = row.back().first;
  pivots_.emplace(col, std::move(row));
  return col;
}

std::vector<SparseRow> Eliminator::reduced_basis() const {
  // process pivots by increasing column so that lower rows are already reduced
  std::map<int, SparseRow> done;
  for (const auto& [col, row0] : pivots_) {
    SparseRow row = row0;
    // clear every non-leading entry sitting in a pivot column
    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t k = 0; k + 1 < row.size(); ++k) {
        auto it = done.find(row[k].first);
        if (it == done.end()) continue;
        Rational c = row[k].second;
        row = axpy(row, c, it->second);
        changed = true;
        break;
      }
    }
    done.emplace(col, std::move(row));
  }
  std::vector<SparseRow> out;
  for (auto it = done.rbegin(); it != done.rend(); ++it) out.push_back(it->second);
  return out;
}

int rank_of(const std::vector<SparseRow>& rows) {
  Eliminator e;
  for (const auto& r : rows) e.add(r);
  return e.rank();
}

}  // namespace diop
