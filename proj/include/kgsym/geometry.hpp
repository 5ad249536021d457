#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "kgsym/calculus.hpp"
#include "kgsym/report.hpp"

namespace kgsym {

// ds^2 = eps dt^2 + dx^2 + dy^2
struct MetricSpec {
  std::array<Expr, 3> diag;
  static MetricSpec flat();
  Expr inverse(int a) const { return diag[a].inverse(); }
};

struct VectorField {
  Expr xi_t, xi_x, xi_y;
  Expr eta;  // u-component

  const Expr& xi(int a) const { return a == 0 ? xi_t : (a == 1 ? xi_x : xi_y); }
  Expr& xi(int a) { return a == 0 ? xi_t : (a == 1 ? xi_x : xi_y); }
  // Components in the order (t, x, y, u).
  std::array<Expr, 4> components() const { return {xi_t, xi_x, xi_y, eta}; }
  static VectorField from_components(const std::array<Expr, 4>& c) { return {c[0], c[1], c[2], c[3]}; }

  // Action on a function of (t, x, y, u).
  Expr apply(const Expr& f) const;
  std::string str() const;

  friend VectorField operator+(const VectorField& a, const VectorField& b);
  friend VectorField operator-(const VectorField& a, const VectorField& b);
  friend VectorField operator*(const Expr& k, const VectorField& v);
};

bool is_zero(const VectorField& v);
bool equal(const VectorField& a, const VectorField& b);

using Matrix3 = std::array<std::array<Expr, 3>, 3>;

Matrix3 lie_derivative_metric(const VectorField& X, const MetricSpec& g);

enum class Collineation { KV, HV, SCKV, ProperCKV, None };
std::string_view to_string(Collineation c);

struct CollineationClass {
  Collineation kind = Collineation::None;
  std::optional<Expr> psi;
};

CollineationClass classify_collineation(const VectorField& X, const MetricSpec& g);

// (1/eps) f_tt + f_xx + f_yy for the flat metric.
Expr laplacian(const Expr& f, const MetricSpec& g);

VectorField lie_bracket(const VectorField& X, const VectorField& Y);

struct CatalogEntry {
  int index = 0;  // 1..10, 11 for u d/du
  VectorField field;
  CollineationClass cls;
};

// X1..X10 of the flat conformal algebra, each re-verified on first use.
const std::vector<CatalogEntry>& catalog();
const VectorField& generator(int index);  // 1..11; 11 is u d/du
Atom generator_symbol(int index);         // the atom X<index>

// Interprets a linear combination of the symbols X1..X11 with coefficients
// free of those symbols, e.g. "a*X1 + b*X7".
VectorField combination(const Expr& lin);
std::vector<std::pair<int, Expr>> combination_terms(const Expr& lin);

struct ClosureResult {
  bool closed = true;
  std::string offending;  // first bracket outside the span, if any
};

// Every pairwise bracket must lie in the span of `gens` for both signatures.
ClosureResult subalgebra_closure(const std::vector<VectorField>& gens, const std::vector<std::string>& labels);

// Data-driven checks of the catalog file, the bracket table and the list of
// subalgebras.
Report verify_catalog(const std::filesystem::path& data_dir);
Report verify_brackets(const std::filesystem::path& data_dir);
Report verify_subalgebras(const std::filesystem::path& data_dir);

struct SubalgebraEntry {
  std::string name;
  std::vector<std::string> tokens;  // as listed
  int line = 0;
};
std::vector<SubalgebraEntry> read_subalgebras(const std::filesystem::path& data_dir);
// Generator index for a token such as "X7"; nullopt for anything else.
std::optional<int> generator_index(std::string_view token);

}  // namespace kgsym
