#pragma once

#include <optional>
#include <string>

#include "kgsym/geometry.hpp"
#include "kgsym/report.hpp"

namespace kgsym {

// A potential V(t, x, y) built from at most one abstract function.
struct PotentialSpec {
  Expr expr;
  static PotentialSpec from(const Expr& e);  // validates
  static PotentialSpec parse(std::string_view text);
};

// (1/eps) u_tt + u_xx + u_yy + V u
Expr klein_gordon(const PotentialSpec& V);

// u_tt and its t-, x-, y-derivatives expressed through the equation.
Bindings on_shell_rules(const PotentialSpec& V);
Expr on_shell(const Expr& e, const PotentialSpec& V);

struct SymmetryCandidate {
  VectorField base;  // spatial part; base.eta is added to the u-component
  Expr u_coeff;      // c(t, x, y) multiplying u
  Expr a0;           // constant absorbed into the u-scaling
  bool include_solution_term = false;  // adds B(t, x, y) d/du, B a solution

  static SymmetryCandidate of(const VectorField& v) { return {v, Expr(), Expr(), false}; }
  VectorField field() const;
};

Expr solution_term();  // B(t, x, y)

struct ProlongedField {
  std::array<Expr, 3> first;                  // eta^t, eta^x, eta^y
  std::array<std::array<Expr, 3>, 3> second;  // eta^{ij}, symmetric
};

ProlongedField prolong(const VectorField& X);
ProlongedField prolong(const SymmetryCandidate& S);
Expr characteristic(const VectorField& X);  // W = eta - xi^j u_j

// pr^(2) X applied to the equation, reduced on solutions.
Expr lie_invariance_residual(const SymmetryCandidate& S, const PotentialSpec& V);

// xi^k V_k + 2 psi V + (1/2) Laplacian(psi); throws if psi is not X's factor.
Expr constraint_residual(const VectorField& X, const Expr& psi, const PotentialSpec& V);

struct UCoefficient {
  enum class Kind { Absorbed, Found, Degenerate, None };
  Kind kind = Kind::None;
  Rational lambda;  // meaningful for Found
  Expr term;        // lambda * psi
  std::string note;
};

// Finds lambda with X + lambda psi u d/du a Lie symmetry, by coefficient
// matching in the jet variables under each signature.
UCoefficient determine_u_coefficient(const VectorField& X, const Expr& psi, const PotentialSpec& V);

// Row-by-row checks of a potentials table: "3", "4", "grid" or "grid1".
Report verify_potentials_table(const std::string& table_id, const std::filesystem::path& data_dir);
Report wave_and_constant_checks();

}  // namespace kgsym
