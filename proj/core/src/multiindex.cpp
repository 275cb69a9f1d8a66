#include "nsjet/multiindex.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace nsjet {

void validate_dimension(int dim) {
  if (dim < 2 || dim > kMaxDim) {
    throw DimensionError("dimension must lie in [2, " + std::to_string(kMaxDim) +
                         "], got " + std::to_string(dim));
  }
}

MultiIndex::MultiIndex(int dim) {
  if (dim < 0 || dim > kMaxDim) {
    throw DimensionError("multi-index dimension out of range: " + std::to_string(dim));
  }
  dim_ = static_cast<std::uint8_t>(dim);
}

MultiIndex::MultiIndex(std::initializer_list<int> entries)
    : MultiIndex(std::span<const int>(entries.begin(), entries.size())) {}

MultiIndex::MultiIndex(std::span<const int> entries) : MultiIndex(static_cast<int>(entries.size())) {
  for (std::size_t k = 0; k < entries.size(); ++k) {
    if (entries[k] < 0) {
      throw std::invalid_argument("negative multi-index entry");
    }
    if (entries[k] > std::numeric_limits<std::uint16_t>::max()) {
      throw std::invalid_argument("multi-index entry too large");
    }
    e_[k] = static_cast<std::uint16_t>(entries[k]);
  }
}

MultiIndex MultiIndex::unit(int dim, int mu) {
  MultiIndex i(dim);
  i.check_direction(mu);
  i.e_[mu - 1] = 1;
  return i;
}

void MultiIndex::check_direction(int mu) const {
  if (mu < 1 || mu > dim_) {
    throw DimensionError("direction " + std::to_string(mu) + " outside 1.." + std::to_string(dim_));
  }
}

int MultiIndex::get(int mu) const {
  check_direction(mu);
  return e_[mu - 1];
}

int MultiIndex::order() const {
  return std::accumulate(e_.begin(), e_.begin() + dim_, 0);
}

std::vector<int> MultiIndex::entries() const {
  return std::vector<int>(e_.begin(), e_.begin() + dim_);
}

MultiIndex MultiIndex::plus_unit(int mu, int times) const {
  check_direction(mu);
  MultiIndex r = *this;
  int v = r.e_[mu - 1] + times;
  if (v < 0) {
    throw std::invalid_argument("multi-index entry would become negative");
  }
  r.e_[mu - 1] = static_cast<std::uint16_t>(v);
  return r;
}

std::string MultiIndex::to_string() const {
  std::string s = "[";
  for (int k = 0; k < dim_; ++k) {
    if (k > 0) s += ',';
    s += std::to_string(e_[k]);
  }
  s += ']';
  return s;
}

MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
  if (a.dim_ != b.dim_) {
    throw DimensionError("multi-index dimension mismatch: " + a.to_string() + " + " + b.to_string());
  }
  MultiIndex r = a;
  for (int k = 0; k < a.dim_; ++k) {
    r.e_[k] = static_cast<std::uint16_t>(a.e_[k] + b.e_[k]);
  }
  return r;
}

std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) {
  if (a.dim_ != b.dim_) return a.dim_ <=> b.dim_;
  if (auto c = a.order() <=> b.order(); c != 0) return c;
  for (int k = 0; k < a.dim_; ++k) {
    if (a.e_[k] != b.e_[k]) return b.e_[k] <=> a.e_[k];
  }
  return std::strong_ordering::equal;
}

std::optional<MultiIndex> subtract(const MultiIndex& a, const MultiIndex& b) {
  if (a.dim() != b.dim()) {
    throw DimensionError("multi-index dimension mismatch: " + a.to_string() + " - " + b.to_string());
  }
  std::vector<int> d(a.dim());
  for (int mu = 1; mu <= a.dim(); ++mu) {
    d[mu - 1] = a.get(mu) - b.get(mu);
    if (d[mu - 1] < 0) return std::nullopt;
  }
  return MultiIndex(std::span<const int>(d));
}

mpz_class binomial(const MultiIndex& i, const MultiIndex& k) {
  if (i.dim() != k.dim()) {
    throw DimensionError("multi-index dimension mismatch in binomial");
  }
  mpz_class result = 1;
  for (int mu = 1; mu <= i.dim(); ++mu) {
    if (k.get(mu) > i.get(mu)) return 0;
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(i.get(mu)),
                 static_cast<unsigned long>(k.get(mu)));
    result *= b;
  }
  return result;
}

IndexClass classify(const MultiIndex& i) {
  IndexClass c;
  c.order = i.order();
  int first = i.dim() > 0 ? i.first() : 0;
  c.in_i0 = first == 0;
  c.in_i1 = first <= 1;
  c.in_i0_prime = first > 0;
  c.in_i1_prime = first > 1;
  return c;
}

std::vector<MultiIndex> lower_set(const MultiIndex& i) {
  std::vector<MultiIndex> out;
  std::vector<int> cur(i.dim(), 0);
  const auto bound = i.entries();
  while (true) {
    out.emplace_back(std::span<const int>(cur));
    int k = 0;
    while (k < i.dim() && cur[k] == bound[k]) {
      cur[k] = 0;
      ++k;
    }
    if (k == i.dim()) break;
    ++cur[k];
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

void compositions(int pos, int remaining, std::vector<int>& cur, int first_direction,
                  std::vector<MultiIndex>& out) {
  const int dim = static_cast<int>(cur.size());
  if (pos == dim - 1) {
    cur[pos] = remaining;
    out.emplace_back(std::span<const int>(cur));
    cur[pos] = 0;
    return;
  }
  if (pos + 1 < first_direction) {
    compositions(pos + 1, remaining, cur, first_direction, out);
    return;
  }
  for (int v = remaining; v >= 0; --v) {
    cur[pos] = v;
    compositions(pos + 1, remaining - v, cur, first_direction, out);
  }
  cur[pos] = 0;
}

}  // namespace

std::vector<MultiIndex> indices_of_order(int dim, int order, int first_direction) {
  std::vector<MultiIndex> out;
  if (first_direction > dim) {
    if (order == 0) out.emplace_back(dim);
    return out;
  }
  std::vector<int> cur(dim, 0);
  compositions(0, order, cur, first_direction, out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace nsjet
