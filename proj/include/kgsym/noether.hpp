#pragma once

#include <array>
#include <optional>

#include "kgsym/symmetry.hpp"

namespace kgsym {

struct Lagrangian {
  Expr expr;
  PotentialSpec V;
};

// (1/2) V u^2 - (1/2) u_x^2 - (1/2) u_y^2 - (1/(2 eps)) u_t^2
Lagrangian lagrangian(const PotentialSpec& V);

// dL/du - D_t(dL/du_t) - D_x(dL/du_x) - D_y(dL/du_y); L of first order.
Expr euler_lagrange(const Expr& L);
inline Expr euler_lagrange(const Lagrangian& L) { return euler_lagrange(L.expr); }

struct GaugeTriple {
  std::array<Expr, 3> f;  // f_t, f_x, f_y
};

struct ConservedVector {
  std::array<Expr, 3> T;  // T^t, T^x, T^y
};

// X^(1)(L) + L D_i(xi^i) - D_i(f_i)
Expr noether_residual(const SymmetryCandidate& S, const Lagrangian& L, const GaugeTriple& f);

// Gauge functions f_i = a_i u^2 + b_i u + c_i with a_i, b_i read off the
// u u_i and u_i coefficients of the residual; c_i is sought as a polynomial
// in (t, x, y) of degree <= max_degree. nullopt when nothing fits.
std::optional<GaugeTriple> solve_gauge(const SymmetryCandidate& S, const Lagrangian& L, int max_degree = 4);

// T^i = f^i - [xi^i L + W dL/du_i]; throws if S is not a Noether symmetry
// with gauge f.
ConservedVector conserved_vector(const SymmetryCandidate& S, const Lagrangian& L, const GaugeTriple& f);

// D_i T^i with u_tt and its derivatives eliminated through the equation.
Expr divergence_on_shell(const ConservedVector& T, const PotentialSpec& V);

// The printed conservation laws (conservation.txt) and the Noether column of
// table3.txt.
Report verify_conservation_table(const std::filesystem::path& data_dir);
Report verify_noether_claims(const std::filesystem::path& data_dir);

// The constant a0 making S + a0 u d/du free of u_i u_j terms in its Noether
// residual: -1/2 for the homothety, 0 for Killing vectors. nullopt when no
// constant does.
std::optional<Expr> noether_u_scaling(const SymmetryCandidate& S, const Lagrangian& L);

// A generator combination with the oracle u-term for a non-constant conformal
// factor and the Noether u-scaling.
SymmetryCandidate noether_symmetry(const std::string& combination, const PotentialSpec& V);
SymmetryCandidate noether_symmetry(const VectorField& X, const PotentialSpec& V);

}  // namespace kgsym
