#include "nsjet/linsolve.hpp"

#include <stdexcept>

namespace nsjet {

SparseEliminator::SparseEliminator(int columns) : columns_(columns) {
  if (columns < 0) throw std::invalid_argument("negative column count");
}

void SparseEliminator::make_primitive(IntRow& row) {
  if (row.empty()) return;
  mpz_class g = 0;
  for (const auto& [c, v] : row) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) break;
  }
  if (sgn(row.begin()->second) < 0) g = -g;
  if (g == 1) return;
  for (auto& [c, v] : row) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

bool SparseEliminator::add_row(const SparseRow& row) {
  // Clear denominators.
  mpz_class lcm = 1;
  for (const auto& [c, v] : row) {
    if (c < 0 || c >= columns_) throw std::out_of_range("column index out of range");
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den_mpz_t());
  }
  IntRow r;
  for (const auto& [c, v] : row) {
    if (sgn(v) == 0) continue;
    r.emplace(c, mpz_class(v.get_num() * (lcm / v.get_den())));
  }
  make_primitive(r);

  while (!r.empty()) {
    const int lead = r.begin()->first;
    auto p = pivots_.find(lead);
    if (p == pivots_.end()) {
      pivots_.emplace(lead, std::move(r));
      return true;
    }
    const IntRow& pivot = p->second;
    const mpz_class a = pivot.begin()->second;
    const mpz_class b = r.begin()->second;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    const mpz_class sa = a / g;
    const mpz_class sb = b / g;
    // r <- sa*r - sb*pivot
    IntRow next;
    auto ir = r.begin();
    auto ip = pivot.begin();
    while (ir != r.end() || ip != pivot.end()) {
      if (ip == pivot.end() || (ir != r.end() && ir->first < ip->first)) {
        next.emplace_hint(next.end(), ir->first, sa * ir->second);
        ++ir;
      } else if (ir == r.end() || ip->first < ir->first) {
        next.emplace_hint(next.end(), ip->first, -sb * ip->second);
        ++ip;
      } else {
        mpz_class v = sa * ir->second - sb * ip->second;
        if (sgn(v) != 0) next.emplace_hint(next.end(), ir->first, std::move(v));
        ++ir;
        ++ip;
      }
    }
    r = std::move(next);
    make_primitive(r);
  }
  return false;
}

std::vector<std::vector<mpq_class>> SparseEliminator::nullspace() const {
  // Back substitution to reduced echelon form, over the rationals.
  std::map<int, SparseRow> reduced;
  for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
    const mpq_class lead(it->second.begin()->second);
    SparseRow row;
    for (const auto& [c, v] : it->second) row.emplace(c, mpq_class(v) / lead);
    // Later pivot rows are already reduced, so each has nonzero entries only at
    // its own pivot and at free columns.
    std::vector<int> hits;
    for (auto e = std::next(row.begin()); e != row.end(); ++e) {
      if (reduced.contains(e->first)) hits.push_back(e->first);
    }
    for (const int col : hits) {
      const mpq_class factor = row.at(col);
      for (const auto& [c, v] : reduced.at(col)) {
        auto [slot, inserted] = row.try_emplace(c, 0);
        slot->second -= factor * v;
        if (sgn(slot->second) == 0) row.erase(slot);
      }
    }
    reduced.emplace(it->first, std::move(row));
  }

  std::vector<std::vector<mpq_class>> basis;
  for (int free = 0; free < columns_; ++free) {
    if (pivots_.contains(free)) continue;
    std::vector<mpq_class> v(static_cast<std::size_t>(columns_), mpq_class(0));
    v[static_cast<std::size_t>(free)] = 1;
    for (const auto& [pc, row] : reduced) {
      auto e = row.find(free);
      if (e != row.end()) v[static_cast<std::size_t>(pc)] = -e->second;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<std::vector<mpq_class>> nullspace(int columns, const std::vector<SparseRow>& rows) {
  SparseEliminator elim(columns);
  for (const auto& r : rows) elim.add_row(r);
  return elim.nullspace();
}

}  // namespace nsjet
