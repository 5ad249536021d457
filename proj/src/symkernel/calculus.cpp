#include "kgsym/calculus.hpp"

#include <optional>

namespace kgsym {

Atom coord_atom(Coord c) {
  static const std::array<Atom, 3> atoms{symbol_atom("t"), symbol_atom("x"), symbol_atom("y")};
  return atoms[static_cast<int>(c)];
}

Atom eps_atom() {
  static const Atom a = symbol_atom("eps");
  return a;
}

bool is_jet(Atom a) { return a->kind == AtomKind::Jet; }

namespace {

bool atom_depends(Atom a, Atom v) {
  if (a == v) return true;
  if (a->kind == AtomKind::Symbol || a->kind == AtomKind::Jet) return false;
  if (v->deps && !(a->deps & v->deps)) return false;
  for (const auto& arg : a->args)
    if (depends_on(arg, v)) return true;
  return false;
}

Expr atom_derivative(Atom a, Atom v) {
  if (a == v) return Expr(1);
  switch (a->kind) {
    case AtomKind::Elementary: {
      const Expr& arg = a->args[0];
      Expr d = partial(arg, v);
      if (d.is_literal_zero()) return d;
      switch (a->fn) {
        case ElementaryFn::Exp: return Expr::from_atom(a) * d;
        case ElementaryFn::Arctan: return d / (Expr(1) + arg * arg);
        case ElementaryFn::Sqrt: return d / (Expr(2) * Expr::from_atom(a));
      }
      break;
    }
    case AtomKind::Function: {
      Expr sum;
      for (std::size_t k = 0; k < a->args.size(); ++k) {
        Expr d = partial(a->args[k], v);
        if (d.is_literal_zero()) continue;
        std::vector<int> derivs = a->derivs;
        ++derivs[k];
        sum += d * Expr::from_atom(function_atom(a->name, std::move(derivs), a->args));
      }
      return sum;
    }
    default: break;
  }
  return Expr();
}

Expr poly_derivative(const Poly& p, Atom v) {
  Expr sum;
  for (Atom a : p.atoms()) {
    if (!atom_depends(a, v)) continue;
    Expr da = atom_derivative(a, v);
    if (da.is_literal_zero()) continue;
    sum += Expr::from_poly(p.partial(a)) * da;
  }
  return sum;
}

void deep_jets(const Expr& e, std::vector<Atom>& out) {
  if (!(e.deps() & (dep::U | dep::Jets))) return;
  for (Atom a : e.atoms()) {
    if (a->kind == AtomKind::Jet) out.push_back(a);
    for (const auto& arg : a->args) deep_jets(arg, out);
  }
}

class Substituter {
 public:
  Substituter(const Bindings& b, EpsMode mode) : bindings_(b), mode_(mode) {}

  Expr expr(const Expr& e) {
    auto n = poly(e.num());
    auto d = poly(e.den());
    if (!n && !d) return e;
    Expr nn = n ? *n : Expr::from_poly(e.num());
    Expr dd = d ? *d : Expr::from_poly(e.den());
    return nn / dd;
  }

 private:
  // nullopt when no atom of p changes.
  std::optional<Expr> poly(const Poly& p) {
    bool any = false;
    for (Atom a : p.atoms())
      if (atom(a)) {
        any = true;
        break;
      }
    if (!any) return std::nullopt;
    std::map<Monomial, std::vector<Term>, MonomialLess> groups;
    for (const auto& t : p.terms()) {
      Monomial changed;
      Monomial kept;
      for (const auto& f : t.mono) (atom(f.atom) ? changed : kept).push_back(f);
      groups[std::move(changed)].push_back({std::move(kept), t.coeff});
    }
    Expr sum;
    for (auto& [changed, terms] : groups) {
      Expr part = Expr::from_poly(Poly::from_terms(std::move(terms)));
      for (const auto& f : changed) part *= atom(f.atom)->pow(f.exp);
      sum += part;
    }
    return sum;
  }

  const std::optional<Expr>& atom(Atom a) {
    auto it = cache_.find(a);
    if (it != cache_.end()) return it->second;
    std::optional<Expr> r;
    if (auto b = bindings_.find(a); b != bindings_.end()) {
      r = b->second;
    } else if (a == eps_atom() && mode_ != EpsMode::Symbolic) {
      r = Expr(mode_ == EpsMode::Plus ? 1 : -1);
    } else if (a->kind == AtomKind::Function || a->kind == AtomKind::Elementary) {
      std::vector<Expr> args;
      bool changed = false;
      for (const auto& arg : a->args) {
        args.push_back(expr(arg));
        changed = changed || !(args.back() == arg);
      }
      if (changed) {
        if (a->kind == AtomKind::Function) r = Expr::from_atom(function_atom(a->name, a->derivs, std::move(args)));
        else r = apply(a->fn, args[0]);
      }
    }
    return cache_.emplace(a, std::move(r)).first->second;
  }

  const Bindings& bindings_;
  EpsMode mode_;
  std::map<Atom, std::optional<Expr>> cache_;
};

thread_local EpsPolicy g_policy = EpsPolicy::Both;

}  // namespace

bool depends_on(const Expr& e, Atom v) {
  if (v->deps && !(e.deps() & v->deps)) return false;
  for (Atom a : e.atoms())
    if (atom_depends(a, v)) return true;
  return false;
}

Expr partial(const Expr& e, Atom v) {
  if (!depends_on(e, v)) return Expr();
  Expr dn = poly_derivative(e.num(), v);
  if (e.den().is_one()) return dn;
  Expr dd = poly_derivative(e.den(), v);
  Expr n = Expr::from_poly(e.num());
  Expr d = Expr::from_poly(e.den());
  return (dn * d - n * dd) / (d * d);
}

Expr diff(const Expr& e, Coord c) {
  if (e.deps() & (dep::U | dep::Jets))
    throw MathError("diff: expression contains jet coordinates; use total_diff");
  return partial(e, coord_atom(c));
}

Expr total_diff(const Expr& e, Coord c) {
  Expr r = partial(e, coord_atom(c));
  std::vector<Atom> jets;
  deep_jets(e, jets);
  std::sort(jets.begin(), jets.end(), AtomLess{});
  jets.erase(std::unique(jets.begin(), jets.end()), jets.end());
  for (Atom j : jets) {
    auto counts = j->jet;
    ++counts[static_cast<int>(c)];
    if (counts[0] + counts[1] + counts[2] > 3) throw MathError("total_diff: jet order would exceed 3");
    Expr d = partial(e, j);
    if (!d.is_literal_zero()) r += d * Expr::jet(counts);
  }
  return r;
}

Expr substitute(const Expr& e, const Bindings& b, EpsMode mode) {
  if (b.empty() && (mode == EpsMode::Symbolic || !(e.deps() & dep::Eps))) return e;
  return Substituter(b, mode).expr(e);
}

Expr instantiate_eps(const Expr& e, int sign) {
  if (!(e.deps() & dep::Eps)) return e;
  return substitute(e, {}, sign > 0 ? EpsMode::Plus : EpsMode::Minus);
}

EpsPolicy eps_policy() { return g_policy; }
void set_eps_policy(EpsPolicy p) { g_policy = p; }

bool is_zero(const Expr& e) { return is_zero(e, g_policy); }

bool is_zero(const Expr& e, EpsPolicy p) {
  if (e.is_literal_zero()) return true;
  if (!(e.deps() & dep::Eps)) return false;
  if (p != EpsPolicy::Minus && !instantiate_eps(e, +1).is_literal_zero()) return false;
  if (p != EpsPolicy::Plus && !instantiate_eps(e, -1).is_literal_zero()) return false;
  return true;
}

std::map<Monomial, Expr, MonomialLess> collect(const Expr& e, const std::function<bool(Atom)>& pick) {
  for (Atom a : e.den().atoms())
    if (pick(a)) throw MathError("collect: denominator involves a collected atom");
  std::map<Monomial, std::vector<Term>, MonomialLess> groups;
  for (const auto& t : e.num().terms()) {
    Monomial key;
    Monomial rest;
    for (const auto& f : t.mono) (pick(f.atom) ? key : rest).push_back(f);
    groups[std::move(key)].push_back({std::move(rest), t.coeff});
  }
  std::map<Monomial, Expr, MonomialLess> out;
  for (auto& [k, terms] : groups) out.emplace(k, Expr::fraction(Poly::from_terms(std::move(terms)), e.den()));
  return out;
}

}  // namespace kgsym
