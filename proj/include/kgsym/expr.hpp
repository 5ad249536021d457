#pragma once

// Exact symbolic expressions in canonical rational-function form.
//
// Every Expr is stored as num/den, two multivariate polynomials over Q in a
// set of interned atoms (symbols, jet coordinates, elementary-function and
// abstract-function applications). num and den are coprime and den is monic
// with respect to the lexicographic term order, so equal values share one
// representation.

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace kgsym {

using Rational = mpq_class;

class MathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Expr;
struct AtomNode;
using Atom = const AtomNode*;

enum class AtomKind : std::uint8_t { Symbol = 0, Jet = 1, Elementary = 2, Function = 3 };
enum class ElementaryFn : std::uint8_t { Exp = 0, Arctan = 1, Sqrt = 2 };

// Independent coordinates, in canonical order.
enum class Coord : std::uint8_t { T = 0, X = 1, Y = 2 };
inline constexpr std::array<Coord, 3> kCoords{Coord::T, Coord::X, Coord::Y};
char coord_letter(Coord c);
std::string_view coord_name(Coord c);

// Dependency bits carried by atoms and expressions.
namespace dep {
inline constexpr std::uint8_t T = 1u << 0;
inline constexpr std::uint8_t X = 1u << 1;
inline constexpr std::uint8_t Y = 1u << 2;
inline constexpr std::uint8_t U = 1u << 3;     // the dependent variable u itself
inline constexpr std::uint8_t Jets = 1u << 4;  // jets of order >= 1
inline constexpr std::uint8_t Eps = 1u << 5;
inline constexpr std::uint8_t Sqrt = 1u << 6;
inline constexpr std::uint8_t Coords = T | X | Y;
std::uint8_t of(Coord c);
}  // namespace dep

struct Factor {
  Atom atom;
  int exp;
  bool operator==(const Factor&) const = default;
};
using Monomial = std::vector<Factor>;

struct Term {
  Monomial mono;
  Rational coeff;
};

int compare_atoms(Atom a, Atom b);
// Lexicographic term order; atoms earlier in compare_atoms order rank higher.
int compare_monomials(const Monomial& a, const Monomial& b);
struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const { return compare_monomials(a, b) < 0; }
};
Monomial multiply(const Monomial& a, const Monomial& b);
bool divides(const Monomial& d, const Monomial& m);
Monomial divide(const Monomial& m, const Monomial& d);  // requires divides(d, m)
Monomial monomial_gcd(const Monomial& a, const Monomial& b);

class Poly {
 public:
  Poly() = default;
  explicit Poly(const Rational& c);
  static Poly from_atom(Atom a, int exp = 1);
  static Poly from_monomial(Monomial m, Rational c);
  // Sorts, merges equal monomials and drops zero coefficients.
  static Poly from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_one() const;
  Rational constant_term() const;
  const Term& leading() const { return terms_.front(); }

  std::vector<Atom> atoms() const;  // sorted by compare_atoms, unique
  std::uint8_t deps() const;
  int degree(Atom a) const;
  int total_degree() const;
  Poly partial(Atom a) const;
  Poly scaled(const Rational& c) const;
  Poly times_monomial(const Monomial& m, const Rational& c) const;
  Poly pow(unsigned n) const;
  Monomial monomial_content() const;  // gcd of all monomials
  Poly divided_by_monomial(const Monomial& m) const;

  Poly operator-() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  bool operator==(const Poly& o) const;

 private:
  std::vector<Term> terms_;  // strictly descending term order
};

int compare(const Poly& a, const Poly& b);
std::optional<Poly> divide_exact(const Poly& a, const Poly& b);
// Greatest common divisor over Q, normalized monic (leading coefficient 1).
Poly gcd(const Poly& a, const Poly& b);

// Coefficients of p viewed as a univariate polynomial in x; index = degree.
std::vector<Poly> to_univariate(const Poly& p, Atom x);
Poly from_univariate(const std::vector<Poly>& coeffs, Atom x);

class Expr {
 public:
  Expr();
  Expr(long v);  // NOLINT(google-explicit-constructor): integer literals read naturally
  Expr(const Rational& v);  // NOLINT(google-explicit-constructor)

  static Expr symbol(std::string_view name);
  static Expr coord(Coord c);
  static Expr eps();
  static Expr u();
  static Expr jet(const std::array<int, 3>& counts);
  static Expr from_atom(Atom a);
  static Expr from_poly(Poly p);
  static Expr fraction(Poly num, Poly den);

  const Poly& num() const;
  const Poly& den() const;
  std::uint8_t deps() const;

  // Structural test on the normal form, no signature instantiation.
  bool is_literal_zero() const { return num().is_zero(); }
  bool is_constant() const;
  std::optional<Rational> constant_value() const;
  bool is_polynomial() const { return den().is_one(); }
  std::vector<Atom> atoms() const;
  std::string str() const;

  Expr pow(int n) const;
  Expr inverse() const;

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  Expr operator-() const;
  Expr& operator+=(const Expr& o) { return *this = *this + o; }
  Expr& operator-=(const Expr& o) { return *this = *this - o; }
  Expr& operator*=(const Expr& o) { return *this = *this * o; }
  bool operator==(const Expr& o) const;

 private:
  struct Rep;
  explicit Expr(std::shared_ptr<const Rep> r) : rep_(std::move(r)) {}
  static Expr make(Poly num, Poly den, bool coprime);
  static const std::shared_ptr<const Rep>& zero_rep();
  std::shared_ptr<const Rep> rep_;
};

int compare(const Expr& a, const Expr& b);

struct AtomNode {
  AtomKind kind = AtomKind::Symbol;
  std::string name;               // symbol name, jet base, or function name
  std::array<int, 3> jet{};       // jet multi-index counts over (t, x, y)
  ElementaryFn fn = ElementaryFn::Exp;
  std::vector<int> derivs;        // abstract-function derivative multi-index
  std::vector<Expr> args;
  std::string key;                // canonical printed form
  std::uint8_t deps = 0;

  int jet_order() const { return jet[0] + jet[1] + jet[2]; }
};

Atom symbol_atom(std::string_view name);
Atom jet_atom(const std::array<int, 3>& counts);
Atom function_atom(std::string name, std::vector<int> derivs, std::vector<Expr> args);
Atom elementary_atom(ElementaryFn fn, Expr arg);

// Elementary applications with the trivial simplifications applied
// (exp(0)=1, arctan(0)=0, sqrt of a rational square).
Expr exp(const Expr& e);
Expr arctan(const Expr& e);
Expr sqrt(const Expr& e);
Expr apply(ElementaryFn fn, const Expr& e);
Expr function(std::string name, std::vector<Expr> args, std::vector<int> derivs = {});

std::string_view elementary_name(ElementaryFn fn);
std::string to_string(const Poly& p);

}  // namespace kgsym
