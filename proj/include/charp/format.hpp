#pragma once

#include <string>

#include "charp/cartier.hpp"
#include "charp/connections.hpp"

namespace charp {

// Printers emit text the expression parser reads back to the same value.
// Coefficients are printed as representatives in [0, p).

std::string variable_name(unsigned var);
std::string to_string(const Monomial& m);
std::string to_string(const MultiPoly& f);
std::string to_string(const RatFunc& f);
std::string to_string(const OneForm& w);
std::string to_string(const TwoForm& w);
std::string to_string(const Chart& c);
/// Rows separated by "; ", entries by ", ".
std::string to_string(const RatMatrix& m);
std::string to_string(const MatrixOneForm& m);
std::string to_string(const MatrixTwoForm& m);

}  // namespace charp
