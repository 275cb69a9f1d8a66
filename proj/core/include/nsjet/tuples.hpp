#pragma once

#include <stdexcept>
#include <vector>

#include "nsjet/expr.hpp"

namespace nsjet {

// Slot numbering shared by characteristics, cotuples and operator
// coefficients: velocity components occupy slots 1..m, the pressure slot is 0.
inline constexpr int kPressureSlot = 0;

// m velocity entries plus one pressure entry. The tag keeps characteristics
// (vector-like) and cotuples (covector-like) from mixing by accident.
template <class Tag>
struct SlotTuple {
  std::vector<Expr> velocity;
  Expr pressure;

  SlotTuple() = default;
  explicit SlotTuple(int dim) : velocity(static_cast<std::size_t>(dim)) {}
  SlotTuple(std::vector<Expr> v, Expr p) : velocity(std::move(v)), pressure(std::move(p)) {}

  int dim() const { return static_cast<int>(velocity.size()); }

  const Expr& slot(int s) const {
    if (s == kPressureSlot) return pressure;
    check(s);
    return velocity[static_cast<std::size_t>(s - 1)];
  }
  Expr& slot(int s) {
    if (s == kPressureSlot) return pressure;
    check(s);
    return velocity[static_cast<std::size_t>(s - 1)];
  }

  bool is_zero() const {
    for (const auto& e : velocity) {
      if (!e.is_zero()) return false;
    }
    return pressure.is_zero();
  }

  friend bool operator==(const SlotTuple&, const SlotTuple&) = default;

 private:
  void check(int s) const {
    if (s < 1 || s > dim()) throw std::out_of_range("slot " + std::to_string(s) + " out of range");
  }
};

struct CharacteristicTag {};
struct CotupleTag {};

// (f^1..f^m, f): generator of an evolutionary field.
using Characteristic = SlotTuple<CharacteristicTag>;
// (chi_1..chi_m, chi): variational derivatives and Helmholtz candidates.
using Cotuple = SlotTuple<CotupleTag>;

// J^mu for the current J^mu d_mu x.
struct CurrentTuple {
  std::vector<Expr> components;

  int dim() const { return static_cast<int>(components.size()); }
  friend bool operator==(const CurrentTuple&, const CurrentTuple&) = default;
};

template <class To, class From>
SlotTuple<To> retag(const SlotTuple<From>& t) {
  return SlotTuple<To>(t.velocity, t.pressure);
}

}  // namespace nsjet
