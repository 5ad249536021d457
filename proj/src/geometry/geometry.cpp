#include "kgsym/geometry.hpp"

#include <mutex>

#include "kgsym/parse.hpp"

namespace kgsym {

MetricSpec MetricSpec::flat() { return {{Expr::eps(), Expr(1), Expr(1)}}; }

namespace {

Atom u_atom() {
  static const Atom a = jet_atom({0, 0, 0});
  return a;
}

}  // namespace

Expr VectorField::apply(const Expr& f) const {
  Expr r;
  for (int a = 0; a < 3; ++a)
    if (!xi(a).is_literal_zero()) r += xi(a) * partial(f, coord_atom(kCoords[a]));
  if (!eta.is_literal_zero()) r += eta * partial(f, u_atom());
  return r;
}

std::string VectorField::str() const {
  static constexpr std::array<const char*, 4> names{"d_t", "d_x", "d_y", "d_u"};
  auto c = components();
  std::string s;
  for (int i = 0; i < 4; ++i) {
    if (c[i].is_literal_zero()) continue;
    if (!s.empty()) s += " + ";
    s += '(' + c[i].str() + ")*" + names[i];
  }
  return s.empty() ? "0" : s;
}

VectorField operator+(const VectorField& a, const VectorField& b) {
  return {a.xi_t + b.xi_t, a.xi_x + b.xi_x, a.xi_y + b.xi_y, a.eta + b.eta};
}

VectorField operator-(const VectorField& a, const VectorField& b) {
  return {a.xi_t - b.xi_t, a.xi_x - b.xi_x, a.xi_y - b.xi_y, a.eta - b.eta};
}

VectorField operator*(const Expr& k, const VectorField& v) { return {k * v.xi_t, k * v.xi_x, k * v.xi_y, k * v.eta}; }

bool is_zero(const VectorField& v) {
  for (const auto& c : v.components())
    if (!is_zero(c)) return false;
  return true;
}

bool equal(const VectorField& a, const VectorField& b) { return is_zero(a - b); }

Matrix3 lie_derivative_metric(const VectorField& X, const MetricSpec& g) {
  if ((X.xi_t.deps() | X.xi_x.deps() | X.xi_y.deps()) & (dep::U | dep::Jets))
    throw MathError("lie_derivative_metric: spatial components depend on u");
  Matrix3 L;
  for (int a = 0; a < 3; ++a)
    for (int b = a; b < 3; ++b) {
      L[a][b] = g.diag[b] * diff(X.xi(b), kCoords[a]) + g.diag[a] * diff(X.xi(a), kCoords[b]);
      L[b][a] = L[a][b];
    }
  return L;
}

std::string_view to_string(Collineation c) {
  switch (c) {
    case Collineation::KV: return "KV";
    case Collineation::HV: return "HV";
    case Collineation::SCKV: return "sCKV";
    case Collineation::ProperCKV: return "properCKV";
    case Collineation::None: return "none";
  }
  return "?";
}

CollineationClass classify_collineation(const VectorField& X, const MetricSpec& g) {
  Matrix3 L = lie_derivative_metric(X, g);
  Expr trace;
  for (int a = 0; a < 3; ++a) trace += g.inverse(a) * L[a][a];
  Expr psi = trace / Expr(6);
  for (int a = 0; a < 3; ++a)
    for (int b = a; b < 3; ++b) {
      Expr expected = a == b ? Expr(2) * psi * g.diag[a] : Expr();
      if (!is_zero(L[a][b] - expected)) return {};
    }
  if (is_zero(psi)) return {Collineation::KV, Expr()};
  bool constant = true;
  bool linear = true;
  for (Coord c : kCoords) {
    Expr d = diff(psi, c);
    if (!is_zero(d)) constant = false;
    for (Coord e : kCoords)
      if (!is_zero(diff(d, e))) linear = false;
  }
  if (constant) return {Collineation::HV, psi};
  if (linear) return {Collineation::SCKV, psi};
  return {Collineation::ProperCKV, psi};
}

Expr laplacian(const Expr& f, const MetricSpec& g) {
  Expr r;
  for (int a = 0; a < 3; ++a) r += g.inverse(a) * diff(diff(f, kCoords[a]), kCoords[a]);
  return r;
}

VectorField lie_bracket(const VectorField& X, const VectorField& Y) {
  auto xc = X.components();
  auto yc = Y.components();
  std::array<Expr, 4> r;
  for (int a = 0; a < 4; ++a) r[a] = X.apply(yc[a]) - Y.apply(xc[a]);
  return VectorField::from_components(r);
}

namespace {

struct PrintedGenerator {
  const char* xi_t;
  const char* xi_x;
  const char* xi_y;
  Collineation kind;
  const char* psi;
};

// X^1..X^10 with their stated classes and conformal factors.
constexpr std::array<PrintedGenerator, 10> kPrinted{{
    {"1", "0", "0", Collineation::KV, "0"},
    {"0", "1", "0", Collineation::KV, "0"},
    {"0", "0", "1", Collineation::KV, "0"},
    {"t", "x", "y", Collineation::HV, "1"},
    {"0", "y", "-x", Collineation::KV, "0"},
    {"x", "-eps*t", "0", Collineation::KV, "0"},
    {"y", "0", "-eps*t", Collineation::KV, "0"},
    {"2*y*t", "2*x*y", "-(t^2*eps + x^2 - y^2)", Collineation::SCKV, "2*y"},
    {"2*x*t", "-(t^2*eps - x^2 + y^2)", "2*x*y", Collineation::SCKV, "2*x"},
    {"(t^2*eps - x^2 - y^2)/eps", "2*x*t", "2*y*t", Collineation::SCKV, "2*t"},
}};

std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> out;
  const MetricSpec g = MetricSpec::flat();
  for (std::size_t i = 0; i < kPrinted.size(); ++i) {
    const auto& p = kPrinted[i];
    CatalogEntry e;
    e.index = static_cast<int>(i) + 1;
    e.field = {parse(p.xi_t), parse(p.xi_x), parse(p.xi_y), Expr()};
    e.cls = classify_collineation(e.field, g);
    if (e.cls.kind != p.kind || !e.cls.psi || !is_zero(*e.cls.psi - parse(p.psi)))
      throw MathError("catalog entry X" + std::to_string(e.index) + " fails its own classification");
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> c = build_catalog();
  return c;
}

const VectorField& generator(int index) {
  static const VectorField scaling{Expr(), Expr(), Expr(), Expr::u()};
  if (index == 11) return scaling;
  if (index < 1 || index > 10) throw MathError("no generator X" + std::to_string(index));
  return catalog()[static_cast<std::size_t>(index - 1)].field;
}

Atom generator_symbol(int index) {
  static const std::array<Atom, 11> atoms = [] {
    std::array<Atom, 11> a{};
    for (int i = 0; i < 11; ++i) a[i] = symbol_atom("X" + std::to_string(i + 1));
    return a;
  }();
  if (index < 1 || index > 11) throw MathError("no generator X" + std::to_string(index));
  return atoms[static_cast<std::size_t>(index - 1)];
}

std::vector<std::pair<int, Expr>> combination_terms(const Expr& lin) {
  std::vector<std::pair<int, Expr>> out;
  Expr rest = lin;
  for (int k = 1; k <= 11; ++k) {
    Atom s = generator_symbol(k);
    if (!depends_on(lin, s)) continue;
    Expr c = partial(lin, s);
    for (int j = 1; j <= 11; ++j)
      if (depends_on(c, generator_symbol(j))) throw MathError("generator combination is not linear: " + lin.str());
    out.emplace_back(k, c);
    rest -= c * Expr::from_atom(s);
  }
  if (!rest.is_literal_zero()) throw MathError("generator combination has a term without a generator: " + lin.str());
  return out;
}

VectorField combination(const Expr& lin) {
  VectorField v;
  for (const auto& [k, c] : combination_terms(lin)) v = v + c * generator(k);
  return v;
}

namespace {

// Rows of equations sum_k c_k * A[k] = b, one per (component, monomial) pair.
struct LinearSystem {
  std::vector<std::vector<Expr>> rows;  // last column is the right-hand side
};

LinearSystem span_system(const std::vector<VectorField>& gens, const VectorField& target) {
  auto pick = [](Atom a) { return a->kind != AtomKind::Symbol || (a->deps & dep::Coords); };
  LinearSystem sys;
  const std::size_t n = gens.size();
  for (int comp = 0; comp < 4; ++comp) {
    std::map<Monomial, std::vector<Expr>, MonomialLess> rows;
    auto add = [&](const Expr& e, std::size_t col) {
      for (auto& [m, c] : collect(e, pick)) {
        auto& row = rows[m];
        if (row.empty()) row.resize(n + 1);
        row[col] += c;
      }
    };
    for (std::size_t k = 0; k < n; ++k) add(gens[k].components()[comp], k);
    add(target.components()[comp], n);
    for (auto& [m, row] : rows) sys.rows.push_back(std::move(row));
  }
  return sys;
}

bool solvable(LinearSystem sys) {
  auto& rows = sys.rows;
  if (rows.empty()) return true;
  const std::size_t cols = rows[0].size() - 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c].is_literal_zero()) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    Expr inv = rows[r][c].inverse();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c].is_literal_zero()) continue;
      Expr f = rows[i][c] * inv;
      for (std::size_t j = c; j <= cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  for (std::size_t i = r; i < rows.size(); ++i)
    if (!rows[i][cols].is_literal_zero()) return false;
  return true;
}

bool in_span(const std::vector<VectorField>& gens, const VectorField& target, int sign) {
  auto inst = [sign](const VectorField& v) {
    return VectorField{instantiate_eps(v.xi_t, sign), instantiate_eps(v.xi_x, sign), instantiate_eps(v.xi_y, sign),
                       instantiate_eps(v.eta, sign)};
  };
  std::vector<VectorField> g;
  g.reserve(gens.size());
  for (const auto& v : gens) g.push_back(inst(v));
  return solvable(span_system(g, inst(target)));
}

}  // namespace

ClosureResult subalgebra_closure(const std::vector<VectorField>& gens, const std::vector<std::string>& labels) {
  const EpsPolicy policy = eps_policy();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      VectorField b = lie_bracket(gens[i], gens[j]);
      if (is_zero(b)) continue;
      bool ok = true;
      if (policy != EpsPolicy::Minus) ok = ok && in_span(gens, b, +1);
      if (policy != EpsPolicy::Plus) ok = ok && in_span(gens, b, -1);
      if (!ok) return {false, "[" + labels[i] + ", " + labels[j] + "] = " + b.str()};
    }
  return {};
}

}  // namespace kgsym
