#pragma once

#include <functional>
#include <map>

#include "kgsym/expr.hpp"

namespace kgsym {

struct AtomLess {
  bool operator()(Atom a, Atom b) const { return compare_atoms(a, b) < 0; }
};

using Bindings = std::map<Atom, Expr, AtomLess>;

enum class EpsMode : std::uint8_t { Symbolic, Plus, Minus };

Atom coord_atom(Coord c);
Atom eps_atom();

// Derivative with respect to any atom; every other atom is held fixed except
// elementary and abstract-function applications, which use the chain rule.
Expr partial(const Expr& e, Atom v);

// Partial derivative in an independent coordinate. Rejects u and its jets.
Expr diff(const Expr& e, Coord c);

// D_c = d/dc + sum over jets J of u_{J+c} d/du_J. Throws past jet order 3.
Expr total_diff(const Expr& e, Coord c);

// Simultaneous substitution; arguments of function atoms are rewritten too.
Expr substitute(const Expr& e, const Bindings& b, EpsMode mode = EpsMode::Symbolic);
Expr instantiate_eps(const Expr& e, int sign);

enum class EpsPolicy : std::uint8_t { Both, Plus, Minus };
EpsPolicy eps_policy();
void set_eps_policy(EpsPolicy p);  // thread-local

class ScopedEpsPolicy {
 public:
  explicit ScopedEpsPolicy(EpsPolicy p) : saved_(eps_policy()) { set_eps_policy(p); }
  ~ScopedEpsPolicy() { set_eps_policy(saved_); }
  ScopedEpsPolicy(const ScopedEpsPolicy&) = delete;
  ScopedEpsPolicy& operator=(const ScopedEpsPolicy&) = delete;

 private:
  EpsPolicy saved_;
};

// Zero under every signature selected by the current policy (both by default).
bool is_zero(const Expr& e);
bool is_zero(const Expr& e, EpsPolicy p);

// Coefficients of e as a polynomial in the atoms selected by `pick`.
// The denominator of e must not involve picked atoms.
std::map<Monomial, Expr, MonomialLess> collect(const Expr& e, const std::function<bool(Atom)>& pick);

bool is_jet(Atom a);
bool depends_on(const Expr& e, Atom v);

}  // namespace kgsym
