#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kgsym/symmetry.hpp"

namespace kgsym {

// X(W) for each W; pass iff it vanishes.
Report check_invariants(const SymmetryCandidate& S, const std::vector<Expr>& invariants, const std::string& id_prefix,
                        const std::string& location = {});

// Rank of d(W_1..W_k)/d(t, x, y, u) at a fixed rational point, for one
// signature. nullopt when the point is singular for some W.
std::optional<int> jacobian_rank(const std::vector<Expr>& invariants, int eps_sign);

// u(t, x, y) = shape * F(args), F one of the reduced functions zeta, phi,
// beta, rho.
struct Ansatz {
  Expr shape;
  std::string function;
  std::vector<Expr> args;

  Expr value() const;
  // Splits an expression linear in exactly one reduced-function atom.
  static Ansatz from(const Expr& e);
  static Ansatz parse(std::string_view text);
};

struct Reduction {
  Expr shape;
  Expr reduced;  // equation divided by the shape
};

// Inserts the ansatz into (1/eps) u_tt + u_xx + u_yy + V u and divides by
// the shape. Throws on a zero shape, dependent arguments, or a result that
// still depends on the coordinates beyond the arguments.
Reduction reduce_residual(const Ansatz& A, const PotentialSpec& V);

// Replaces F(v_1, .., v_k) and its derivatives in e by the corresponding
// derivatives of `replacement`; the arguments of F must be the coordinates
// `vars`.
Expr substitute_function(const Expr& e, const std::string& name, const std::vector<Coord>& vars,
                         const Expr& replacement);

// mu with computed = mu * printed and mu != 0, if any.
std::optional<Expr> match_up_to_factor(const Expr& computed, const Expr& printed);

// The two worked reductions, their commuting symmetry pairs and the
// printed-reading variants.
Report verify_reductions();

// The invariants column of table3.txt, including the transposed readings and
// functional independence.
Report verify_table3_invariants(const std::filesystem::path& data_dir);

}  // namespace kgsym
