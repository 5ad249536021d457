#include <mutex>
#include <unordered_map>

#include "kgsym/expr.hpp"

namespace kgsym {

char coord_letter(Coord c) { return "txy"[static_cast<int>(c)]; }

std::string_view coord_name(Coord c) {
  static constexpr std::array<std::string_view, 3> names{"t", "x", "y"};
  return names[static_cast<int>(c)];
}

std::uint8_t dep::of(Coord c) { return static_cast<std::uint8_t>(1u << static_cast<int>(c)); }

std::string_view elementary_name(ElementaryFn fn) {
  switch (fn) {
    case ElementaryFn::Exp: return "exp";
    case ElementaryFn::Arctan: return "arctan";
    case ElementaryFn::Sqrt: return "sqrt";
  }
  return "?";
}

namespace {

// Interned atoms live for the whole process. The table only deduplicates:
// identity is the canonical key, so results never depend on insertion order.
class Registry {
 public:
  Atom intern(AtomNode node) {
    std::string k;
    k.reserve(node.key.size() + 1);
    k.push_back(static_cast<char>('0' + static_cast<int>(node.kind)));
    k += node.key;
    std::lock_guard lock(mutex_);
    auto it = table_.find(k);
    if (it != table_.end()) return it->second.get();
    auto owned = std::make_unique<AtomNode>(std::move(node));
    Atom a = owned.get();
    table_.emplace(std::move(k), std::move(owned));
    return a;
  }

 private:
  std::mutex mutex_;
  std::unordered_map<std::string, std::unique_ptr<AtomNode>> table_;
};

Registry& registry() {
  static Registry r;
  return r;
}

std::uint8_t args_deps(const std::vector<Expr>& args) {
  std::uint8_t d = 0;
  for (const auto& a : args) d |= a.deps();
  return d;
}

std::string join_args(const std::vector<Expr>& args) {
  std::string s;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) s += ", ";
    s += args[i].str();
  }
  return s;
}

}  // namespace

Atom symbol_atom(std::string_view name) {
  AtomNode n;
  n.kind = AtomKind::Symbol;
  n.name = std::string(name);
  n.key = n.name;
  if (name == "t") n.deps = dep::T;
  else if (name == "x") n.deps = dep::X;
  else if (name == "y") n.deps = dep::Y;
  else if (name == "eps") n.deps = dep::Eps;
  return registry().intern(std::move(n));
}

Atom jet_atom(const std::array<int, 3>& counts) {
  AtomNode n;
  n.kind = AtomKind::Jet;
  n.name = "u";
  n.jet = counts;
  n.key = "u";
  if (n.jet_order() > 0) {
    n.key += '_';
    for (Coord c : kCoords) n.key.append(static_cast<std::size_t>(counts[static_cast<int>(c)]), coord_letter(c));
    n.deps = dep::Jets;
  } else {
    n.deps = dep::U;
  }
  return registry().intern(std::move(n));
}

Atom function_atom(std::string name, std::vector<int> derivs, std::vector<Expr> args) {
  if (derivs.empty()) derivs.assign(args.size(), 0);
  if (derivs.size() != args.size())
    throw MathError("derivative multi-index of " + name + " does not match its arity");
  AtomNode n;
  n.kind = AtomKind::Function;
  n.name = std::move(name);
  n.key = n.name;
  bool any = false;
  for (int d : derivs) {
    if (d < 0) throw MathError("negative derivative order in " + n.name);
    any = any || d != 0;
  }
  if (any) {
    n.key += '[';
    for (std::size_t i = 0; i < derivs.size(); ++i) {
      if (i) n.key += ',';
      n.key += std::to_string(derivs[i]);
    }
    n.key += ']';
  }
  n.key += '(' + join_args(args) + ')';
  n.deps = args_deps(args);
  n.derivs = std::move(derivs);
  n.args = std::move(args);
  return registry().intern(std::move(n));
}

Atom elementary_atom(ElementaryFn fn, Expr arg) {
  AtomNode n;
  n.kind = AtomKind::Elementary;
  n.fn = fn;
  n.name = std::string(elementary_name(fn));
  n.key = n.name + '(' + arg.str() + ')';
  n.deps = arg.deps();
  if (fn == ElementaryFn::Sqrt) n.deps |= dep::Sqrt;
  n.args.push_back(std::move(arg));
  return registry().intern(std::move(n));
}

int compare_atoms(Atom a, Atom b) {
  if (a == b) return 0;
  if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
  if (a->kind == AtomKind::Jet) {
    if (a->jet_order() != b->jet_order()) return a->jet_order() < b->jet_order() ? -1 : 1;
    for (int i = 0; i < 3; ++i)
      if (a->jet[i] != b->jet[i]) return a->jet[i] > b->jet[i] ? -1 : 1;
    return 0;
  }
  int c = a->key.compare(b->key);
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

Expr exp(const Expr& e) {
  if (e.is_literal_zero()) return Expr(1);
  return Expr::from_atom(elementary_atom(ElementaryFn::Exp, e));
}

Expr arctan(const Expr& e) {
  if (e.is_literal_zero()) return Expr(0);
  return Expr::from_atom(elementary_atom(ElementaryFn::Arctan, e));
}

namespace {
std::optional<mpz_class> exact_sqrt(const mpz_class& v) {
  if (v < 0) return std::nullopt;
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
  if (r * r != v) return std::nullopt;
  return r;
}
}  // namespace

Expr sqrt(const Expr& e) {
  if (auto c = e.constant_value()) {
    auto n = exact_sqrt(c->get_num());
    auto d = exact_sqrt(c->get_den());
    if (n && d) return Expr(Rational(*n, *d));
  }
  return Expr::from_atom(elementary_atom(ElementaryFn::Sqrt, e));
}

Expr apply(ElementaryFn fn, const Expr& e) {
  switch (fn) {
    case ElementaryFn::Exp: return exp(e);
    case ElementaryFn::Arctan: return arctan(e);
    case ElementaryFn::Sqrt: return sqrt(e);
  }
  return e;
}

Expr function(std::string name, std::vector<Expr> args, std::vector<int> derivs) {
  return Expr::from_atom(function_atom(std::move(name), std::move(derivs), std::move(args)));
}

}  // namespace kgsym
