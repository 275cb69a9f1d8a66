#pragma once

#include <map>
#include <vector>

#include <gmpxx.h>

namespace nsjet {

using SparseRow = std::map<int, mpq_class>;

// Exact row echelon form over the integers, built one row at a time. Rows are
// kept primitive; the pivot of a row is its smallest column.
class SparseEliminator {
 public:
  explicit SparseEliminator(int columns);

  int columns() const { return columns_; }
  int rank() const { return static_cast<int>(pivots_.size()); }

  // Returns false when the row was already in the span of earlier rows.
  bool add_row(const SparseRow& row);

  // Basis of the right nullspace. Vector b has entry 1 at the b-th free
  // column (in increasing order) and 0 at every other free column.
  std::vector<std::vector<mpq_class>> nullspace() const;

 private:
  using IntRow = std::map<int, mpz_class>;

  static void make_primitive(IntRow& row);

  int columns_;
  std::map<int, IntRow> pivots_;
};

std::vector<std::vector<mpq_class>> nullspace(int columns, const std::vector<SparseRow>& rows);

}  // namespace nsjet
