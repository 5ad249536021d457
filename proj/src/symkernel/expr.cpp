#include <map>

#include "kgsym/expr.hpp"

namespace kgsym {

struct Expr::Rep {
  Poly num;
  Poly den;
  std::uint8_t deps = 0;
};

namespace {

bool has_sqrt_power(const Poly& p) {
  if (!(p.deps() & dep::Sqrt)) return false;
  for (const auto& t : p.terms())
    for (const auto& f : t.mono)
      if (f.atom->kind == AtomKind::Elementary && f.atom->fn == ElementaryFn::Sqrt && f.exp >= 2) return true;
  return false;
}

Atom first_sqrt_atom(const Poly& p) {
  if (!(p.deps() & dep::Sqrt)) return nullptr;
  for (const auto& t : p.terms())
    for (const auto& f : t.mono)
      if (f.atom->kind == AtomKind::Elementary && f.atom->fn == ElementaryFn::Sqrt) return f.atom;
  return nullptr;
}

// Rewrites sqrt(e)^k as e^(k/2) * sqrt(e)^(k%2).
Expr reduce_sqrt_powers(const Poly& p) {
  std::map<Monomial, std::vector<Term>, MonomialLess> groups;
  for (const auto& t : p.terms()) {
    Monomial lifted;  // sqrt atoms with the exponent of their argument
    Monomial rest;
    for (const auto& f : t.mono) {
      if (f.atom->kind == AtomKind::Elementary && f.atom->fn == ElementaryFn::Sqrt && f.exp >= 2) {
        lifted.push_back({f.atom, f.exp / 2});
        if (f.exp % 2) rest.push_back({f.atom, 1});
      } else {
        rest.push_back(f);
      }
    }
    groups[std::move(lifted)].push_back({std::move(rest), t.coeff});
  }
  Expr sum;
  for (auto& [lifted, terms] : groups) {
    Expr part = Expr::from_poly(Poly::from_terms(std::move(terms)));
    for (const auto& f : lifted) part = part * f.atom->args[0].pow(f.exp);
    sum = sum + part;
  }
  return sum;
}

}  // namespace

Expr::Expr() : rep_(zero_rep()) {}

Expr::Expr(long v) : Expr(Rational(v)) {}

Expr::Expr(const Rational& v) {
  if (v == 0) {
    rep_ = zero_rep();
    return;
  }
  auto r = std::make_shared<Rep>();
  r->num = Poly(v);
  r->den = Poly(Rational(1));
  rep_ = std::move(r);
}

const std::shared_ptr<const Expr::Rep>& Expr::zero_rep() {
  static const std::shared_ptr<const Rep> z = [] {
    auto r = std::make_shared<Rep>();
    r->den = Poly(Rational(1));
    return r;
  }();
  return z;
}

Expr Expr::symbol(std::string_view name) { return from_atom(symbol_atom(name)); }
Expr Expr::coord(Coord c) { return symbol(coord_name(c)); }
Expr Expr::eps() { return symbol("eps"); }
Expr Expr::u() { return from_atom(jet_atom({0, 0, 0})); }
Expr Expr::jet(const std::array<int, 3>& counts) { return from_atom(jet_atom(counts)); }

Expr Expr::from_atom(Atom a) {
  auto r = std::make_shared<Rep>();
  r->num = Poly::from_atom(a);
  r->den = Poly(Rational(1));
  r->deps = a->deps;
  return Expr(std::shared_ptr<const Rep>(std::move(r)));
}

Expr Expr::from_poly(Poly p) { return make(std::move(p), Poly(Rational(1)), true); }

Expr Expr::fraction(Poly num, Poly den) { return make(std::move(num), std::move(den), false); }

Expr Expr::make(Poly num, Poly den, bool coprime) {
  if (den.is_zero()) throw MathError("division by an expression that normalizes to zero");
  if (num.is_zero()) return Expr();

  if (has_sqrt_power(num) || has_sqrt_power(den)) return reduce_sqrt_powers(num) / reduce_sqrt_powers(den);

  if (Atom s = first_sqrt_atom(den)) {
    // den = A + B*s  ->  multiply through by the conjugate A - B*s.
    auto parts = to_univariate(den, s);
    Poly a = parts[0];
    Poly b = parts.size() > 1 ? parts[1] : Poly();
    Poly conj = a - b * Poly::from_atom(s);
    Expr new_den = from_poly(a * a) - from_poly(b * b) * s->args[0];
    return from_poly(num * conj) / new_den;
  }

  if (!coprime && !den.is_constant()) {
    Poly g = gcd(num, den);
    if (!g.is_constant()) {
      num = *divide_exact(num, g);
      den = *divide_exact(den, g);
    }
  }
  const Rational lc = den.leading().coeff;
  if (lc != 1) {
    Rational inv = Rational(1) / lc;
    num = num.scaled(inv);
    den = den.scaled(inv);
  }
  auto r = std::make_shared<Rep>();
  r->deps = num.deps() | den.deps();
  r->num = std::move(num);
  r->den = std::move(den);
  return Expr(std::shared_ptr<const Rep>(std::move(r)));
}

const Poly& Expr::num() const { return rep_->num; }
const Poly& Expr::den() const { return rep_->den; }
std::uint8_t Expr::deps() const { return rep_->deps; }

bool Expr::is_constant() const { return num().is_constant() && den().is_constant(); }

std::optional<Rational> Expr::constant_value() const {
  if (!is_constant()) return std::nullopt;
  return num().constant_term() / den().constant_term();
}

std::vector<Atom> Expr::atoms() const {
  auto a = num().atoms();
  auto b = den().atoms();
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end(), [](Atom x, Atom y) { return compare_atoms(x, y) < 0; });
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

Expr Expr::operator-() const {
  if (is_literal_zero()) return *this;
  auto r = std::make_shared<Rep>(*rep_);
  r->num = -r->num;
  return Expr(std::shared_ptr<const Rep>(std::move(r)));
}

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_literal_zero()) return b;
  if (b.is_literal_zero()) return a;
  if (a.den() == b.den()) return Expr::make(a.num() + b.num(), a.den(), a.den().is_one());
  // Henrici: only factors of gcd(den_a, den_b) can cancel.
  Poly g = gcd(a.den(), b.den());
  Poly da = *divide_exact(a.den(), g);
  Poly db = *divide_exact(b.den(), g);
  Poly num = a.num() * db + b.num() * da;
  Poly den = a.den() * db;
  if (!g.is_constant() && !num.is_zero()) {
    Poly h = gcd(num, g);
    if (!h.is_constant()) {
      num = *divide_exact(num, h);
      den = *divide_exact(den, h);
    }
  }
  return Expr::make(std::move(num), std::move(den), true);
}

Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_literal_zero() || b.is_literal_zero()) return Expr();
  if (a.den().is_one() && b.den().is_one()) return Expr::make(a.num() * b.num(), a.den(), true);
  Poly g1 = gcd(a.num(), b.den());
  Poly g2 = gcd(b.num(), a.den());
  Poly an = g1.is_constant() ? a.num() : *divide_exact(a.num(), g1);
  Poly bd = g1.is_constant() ? b.den() : *divide_exact(b.den(), g1);
  Poly bn = g2.is_constant() ? b.num() : *divide_exact(b.num(), g2);
  Poly ad = g2.is_constant() ? a.den() : *divide_exact(a.den(), g2);
  return Expr::make(an * bn, ad * bd, true);
}

Expr Expr::inverse() const {
  if (is_literal_zero()) throw MathError("division by an expression that normalizes to zero");
  return make(den(), num(), true);
}

Expr operator/(const Expr& a, const Expr& b) { return a * b.inverse(); }

Expr Expr::pow(int n) const {
  if (n < 0) return inverse().pow(-n);
  Expr result(1);
  Expr base = *this;
  auto k = static_cast<unsigned>(n);
  while (k) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k) base = base * base;
  }
  return result;
}

bool Expr::operator==(const Expr& o) const {
  return rep_ == o.rep_ || (num() == o.num() && den() == o.den());
}

int compare(const Expr& a, const Expr& b) {
  if (int c = compare(a.num(), b.num())) return c;
  return compare(a.den(), b.den());
}

namespace {

std::string monomial_str(const Monomial& m) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) s += '*';
    s += m[i].atom->key;
    if (m[i].exp != 1) s += '^' + std::to_string(m[i].exp);
  }
  return s;
}

// Prints a term whose coefficient is taken as positive; the caller handles sign.
std::string term_str(const Monomial& m, const Rational& abs_coeff) {
  if (m.empty()) return abs_coeff.get_str();
  if (abs_coeff == 1) return monomial_str(m);
  return abs_coeff.get_str() + '*' + monomial_str(m);
}

}  // namespace

std::string to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& t : p.terms()) {
    const bool neg = t.coeff < 0;
    Rational mag = neg ? Rational(-t.coeff) : t.coeff;
    if (first) s += neg ? "-" : "";
    else s += neg ? " - " : " + ";
    s += term_str(t.mono, mag);
    first = false;
  }
  return s;
}

std::string Expr::str() const {
  std::string n = to_string(num());
  if (den().is_one()) return n;
  if (num().size() > 1) n = '(' + n + ')';
  const auto& d = den();
  std::string ds = to_string(d);
  const bool bare = d.size() == 1 && d.leading().mono.size() == 1;
  return n + '/' + (bare ? ds : '(' + ds + ')');
}

}  // namespace kgsym
