#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace nsjet {

// Largest number of independent variables x^1..x^m the engine supports.
inline constexpr int kMaxDim = 8;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Throws DimensionError unless 2 <= dim <= kMaxDim.
void validate_dimension(int dim);

// Element of Z_+^m counting partial derivatives per direction. Directions are
// numbered 1..m throughout the library, matching x^1..x^m.
//
// Ordering is by total order |i| first, then by entries with larger leading
// entries first, so (2,0,0) < (0,2,0) < (0,0,2).
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(int dim);
  MultiIndex(std::initializer_list<int> entries);
  explicit MultiIndex(std::span<const int> entries);

  // The index (mu) with a single 1 in direction mu.
  static MultiIndex unit(int dim, int mu);

  int dim() const { return dim_; }
  int get(int mu) const;
  int first() const { return get(1); }
  int order() const;
  bool is_zero() const { return order() == 0; }
  std::vector<int> entries() const;

  // i + times*(mu)
  MultiIndex plus_unit(int mu, int times = 1) const;

  std::string to_string() const;

  friend MultiIndex operator+(const MultiIndex& a, const MultiIndex& b);
  friend bool operator==(const MultiIndex& a, const MultiIndex& b) = default;
  friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b);

 private:
  void check_direction(int mu) const;

  std::array<std::uint16_t, kMaxDim> e_{};
  std::uint8_t dim_ = 0;
};

// a - b when every entry stays non-negative.
std::optional<MultiIndex> subtract(const MultiIndex& a, const MultiIndex& b);

// Product over directions of binomial(i^mu, k^mu); zero if some k^mu > i^mu.
mpz_class binomial(const MultiIndex& i, const MultiIndex& k);

// Membership in the splits I_0 (i^1 = 0), I_1 (i^1 <= 1) and their
// complements I'_0 (i^1 > 0), I'_1 (i^1 > 1).
struct IndexClass {
  int order = 0;
  bool in_i0 = false;
  bool in_i1 = false;
  bool in_i0_prime = false;
  bool in_i1_prime = false;
};

IndexClass classify(const MultiIndex& i);

// All k with 0 <= k <= i componentwise, in canonical order.
std::vector<MultiIndex> lower_set(const MultiIndex& i);

// All indices of the given total order whose support lies in directions
// first_direction..dim, in canonical order.
std::vector<MultiIndex> indices_of_order(int dim, int order, int first_direction = 1);

}  // namespace nsjet
