#pragma once

// Exact sparse Gaussian elimination over the rationals.

#include <map>
#include <utility>
#include <vector>

#include "diop/rational.hpp"

namespace diop {

using SparseRow = std::vector<std::pair<int, Rational>>;  // sorted by column, no zeros

SparseRow make_row(std::vector<std::pair<int, Rational>> entries);

// Incremental row echelon form; each stored row is monic at its largest column.
class Eliminator {
 public:
  // Pivot column of the row if it was independent of the rows added so
  // far, -1 otherwise.
  int add(SparseRow row);
  int rank() const { return static_cast<int>(pivots_.size()); }
  // Fully reduced basis of the row space: every pivot column appears in
  // exactly one row. Rows are returned by decreasing pivot column.
  std::vector<SparseRow> reduced_basis() const;

 private:
  SparseRow reduce(SparseRow row) const;
  std::map<int, SparseRow> pivots_;
};

int rank_of(const std::vector<SparseRow>& rows);

}  // namespace diop
