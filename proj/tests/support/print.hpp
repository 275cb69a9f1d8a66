#pragma once

#include <ostream>

#include "nsjet/exprio.hpp"

// Readable gtest failure messages.
namespace nsjet {

inline void PrintTo(const Expr& f, std::ostream* os) { *os << print_expr(f); }
inline void PrintTo(const ChiTuple& chi, std::ostream* os) { *os << print_chi(chi); }
inline void PrintTo(const Characteristic& f, std::ostream* os) { *os << print_characteristic(f); }
inline void PrintTo(const Cotuple& chi, std::ostream* os) { *os << print_cotuple(chi); }

}  // namespace nsjet
