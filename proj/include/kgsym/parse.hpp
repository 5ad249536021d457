#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "kgsym/expr.hpp"

namespace kgsym {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t pos)
      : std::runtime_error(what + " at position " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

// Grammar: sums, products, quotients and integer powers of rational
// literals, the variables t x y u eps, jets u_<txy...>, elementary functions
// exp/arctan/sqrt, abstract functions F(args) and F[i,j](args), and
// free constants. Abstract function names start with an uppercase letter or
// are one of zeta, phi, beta, rho.
Expr parse(std::string_view text);

bool is_function_name(std::string_view name);

}  // namespace kgsym
