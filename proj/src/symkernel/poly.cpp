#include <algorithm>
#include <map>

#include "kgsym/expr.hpp"

namespace kgsym {

int compare_monomials(const Monomial& a, const Monomial& b) {
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    int c = compare_atoms(a[i].atom, b[j].atom);
    if (c < 0) return 1;
    if (c > 0) return -1;
    if (a[i].exp != b[j].exp) return a[i].exp > b[j].exp ? 1 : -1;
    ++i;
    ++j;
  }
  if (i < a.size()) return 1;
  if (j < b.size()) return -1;
  return 0;
}

Monomial multiply(const Monomial& a, const Monomial& b) {
  Monomial r;
  r.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    int c = compare_atoms(a[i].atom, b[j].atom);
    if (c < 0) {
      r.push_back(a[i++]);
    } else if (c > 0) {
      r.push_back(b[j++]);
    } else {
      r.push_back({a[i].atom, a[i].exp + b[j].exp});
      ++i;
      ++j;
    }
  }
  r.insert(r.end(), a.begin() + static_cast<std::ptrdiff_t>(i), a.end());
  r.insert(r.end(), b.begin() + static_cast<std::ptrdiff_t>(j), b.end());
  return r;
}

bool divides(const Monomial& d, const Monomial& m) {
  std::size_t j = 0;
  for (const auto& f : d) {
    while (j < m.size() && compare_atoms(m[j].atom, f.atom) < 0) ++j;
    if (j == m.size() || m[j].atom != f.atom || m[j].exp < f.exp) return false;
  }
  return true;
}

Monomial divide(const Monomial& m, const Monomial& d) {
  Monomial r;
  r.reserve(m.size());
  std::size_t j = 0;
  for (const auto& f : m) {
    if (j < d.size() && d[j].atom == f.atom) {
      if (f.exp > d[j].exp) r.push_back({f.atom, f.exp - d[j].exp});
      ++j;
    } else {
      r.push_back(f);
    }
  }
  return r;
}

namespace {

std::vector<Term> merge_add(const std::vector<Term>& a, const std::vector<Term>& b, bool negate_b) {
  std::vector<Term> r;
  r.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    int c = 0;
    if (i == a.size()) c = -1;
    else if (j == b.size()) c = 1;
    else c = compare_monomials(a[i].mono, b[j].mono);
    if (c > 0) {
      r.push_back(a[i++]);
    } else if (c < 0) {
      r.push_back(b[j++]);
      if (negate_b) r.back().coeff = -r.back().coeff;
    } else {
      Rational s = negate_b ? Rational(a[i].coeff - b[j].coeff) : Rational(a[i].coeff + b[j].coeff);
      if (s != 0) r.push_back({a[i].mono, std::move(s)});
      ++i;
      ++j;
    }
  }
  return r;
}

}  // namespace

Poly::Poly(const Rational& c) {
  if (c != 0) {
    terms_.push_back({{}, c});
    terms_.back().coeff.canonicalize();
  }
}

Poly Poly::from_atom(Atom a, int exp) {
  Poly p;
  if (exp == 0) return Poly(Rational(1));
  p.terms_.push_back({{{a, exp}}, Rational(1)});
  return p;
}

Poly Poly::from_monomial(Monomial m, Rational c) {
  Poly p;
  if (c != 0) {
    c.canonicalize();
    p.terms_.push_back({std::move(m), std::move(c)});
  }
  return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return compare_monomials(a.mono, b.mono) > 0; });
  Poly p;
  p.terms_.reserve(terms.size());
  for (auto& t : terms) {
    if (!p.terms_.empty() && compare_monomials(p.terms_.back().mono, t.mono) == 0) {
      p.terms_.back().coeff += t.coeff;
    } else {
      if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
  return p;
}

bool Poly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.empty()); }

bool Poly::is_one() const { return terms_.size() == 1 && terms_[0].mono.empty() && terms_[0].coeff == 1; }

Rational Poly::constant_term() const {
  if (!terms_.empty() && terms_.back().mono.empty()) return terms_.back().coeff;
  return Rational(0);
}

std::vector<Atom> Poly::atoms() const {
  std::vector<Atom> r;
  for (const auto& t : terms_)
    for (const auto& f : t.mono) r.push_back(f.atom);
  std::sort(r.begin(), r.end(), [](Atom a, Atom b) { return compare_atoms(a, b) < 0; });
  r.erase(std::unique(r.begin(), r.end()), r.end());
  return r;
}

std::uint8_t Poly::deps() const {
  std::uint8_t d = 0;
  for (const auto& t : terms_)
    for (const auto& f : t.mono) d |= f.atom->deps;
  return d;
}

int Poly::degree(Atom a) const {
  int d = 0;
  for (const auto& t : terms_)
    for (const auto& f : t.mono)
      if (f.atom == a) d = std::max(d, f.exp);
  return d;
}

int Poly::total_degree() const {
  int d = 0;
  for (const auto& t : terms_) {
    int s = 0;
    for (const auto& f : t.mono) s += f.exp;
    d = std::max(d, s);
  }
  return d;
}

Poly Poly::partial(Atom a) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    for (std::size_t k = 0; k < t.mono.size(); ++k) {
      if (t.mono[k].atom != a) continue;
      Monomial m = t.mono;
      int e = m[k].exp;
      if (e == 1) m.erase(m.begin() + static_cast<std::ptrdiff_t>(k));
      else m[k].exp = e - 1;
      out.push_back({std::move(m), t.coeff * e});
      break;
    }
  }
  // Removing one power of a fixed atom preserves the relative order.
  Poly p;
  p.terms_ = std::move(out);
  return p;
}

Poly Poly::scaled(const Rational& c) const {
  if (c == 0) return Poly();
  Poly p = *this;
  for (auto& t : p.terms_) t.coeff *= c;
  return p;
}

Poly Poly::times_monomial(const Monomial& m, const Rational& c) const {
  if (c == 0) return Poly();
  Poly p;
  p.terms_.reserve(terms_.size());
  for (const auto& t : terms_) p.terms_.push_back({multiply(t.mono, m), t.coeff * c});
  return p;
}

Poly Poly::pow(unsigned n) const {
  Poly result(Rational(1));
  Poly base = *this;
  while (n) {
    if (n & 1u) result = result * base;
    n >>= 1u;
    if (n) base = base * base;
  }
  return result;
}

Monomial Poly::monomial_content() const {
  if (terms_.empty()) return {};
  Monomial g = terms_.front().mono;
  for (const auto& t : terms_) {
    if (g.empty()) break;
    g = monomial_gcd(g, t.mono);
  }
  return g;
}

Poly Poly::divided_by_monomial(const Monomial& m) const {
  if (m.empty()) return *this;
  Poly p;
  p.terms_.reserve(terms_.size());
  for (const auto& t : terms_) p.terms_.push_back({divide(t.mono, m), t.coeff});
  return p;
}

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

Poly operator+(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  Poly p;
  p.terms_ = merge_add(a.terms_, b.terms_, false);
  return p;
}

Poly operator-(const Poly& a, const Poly& b) {
  if (b.is_zero()) return a;
  Poly p;
  p.terms_ = merge_add(a.terms_, b.terms_, true);
  return p;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  if (a.size() == 1) return b.times_monomial(a.terms_[0].mono, a.terms_[0].coeff);
  if (b.size() == 1) return a.times_monomial(b.terms_[0].mono, b.terms_[0].coeff);
  std::vector<Term> prod;
  prod.reserve(a.size() * b.size());
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) prod.push_back({multiply(s.mono, t.mono), s.coeff * t.coeff});
  return Poly::from_terms(std::move(prod));
}

bool Poly::operator==(const Poly& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].coeff != o.terms_[i].coeff || !(terms_[i].mono == o.terms_[i].mono)) return false;
  return true;
}

int compare(const Poly& a, const Poly& b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = compare_monomials(a.terms()[i].mono, b.terms()[i].mono);
    if (c) return c;
    int k = cmp(a.terms()[i].coeff, b.terms()[i].coeff);
    if (k) return k < 0 ? -1 : 1;
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw MathError("polynomial division by zero");
  if (a.is_zero()) return Poly();
  if (b.is_constant()) return a.scaled(Rational(1) / b.leading().coeff);
  if (b.size() == 1) {
    const auto& lt = b.leading();
    std::vector<Term> q;
    q.reserve(a.size());
    for (const auto& t : a.terms()) {
      if (!divides(lt.mono, t.mono)) return std::nullopt;
      q.push_back({divide(t.mono, lt.mono), t.coeff / lt.coeff});
    }
    return Poly::from_terms(std::move(q));
  }
  const auto& lb = b.leading();
  std::vector<Term> q;
  Poly r = a;
  while (!r.is_zero()) {
    const auto& lr = r.leading();
    if (!divides(lb.mono, lr.mono)) return std::nullopt;
    Monomial m = divide(lr.mono, lb.mono);
    Rational c = lr.coeff / lb.coeff;
    r = r - b.times_monomial(m, c);
    q.push_back({std::move(m), std::move(c)});
  }
  return Poly::from_terms(std::move(q));
}

std::vector<Poly> to_univariate(const Poly& p, Atom x) {
  std::vector<std::vector<Term>> buckets(static_cast<std::size_t>(p.degree(x)) + 1);
  for (const auto& t : p.terms()) {
    int e = 0;
    Monomial m;
    m.reserve(t.mono.size());
    for (const auto& f : t.mono) {
      if (f.atom == x) e = f.exp;
      else m.push_back(f);
    }
    buckets[static_cast<std::size_t>(e)].push_back({std::move(m), t.coeff});
  }
  std::vector<Poly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(Poly::from_terms(std::move(b)));
  return out;
}

Poly from_univariate(const std::vector<Poly>& coeffs, Atom x) {
  std::vector<Term> terms;
  for (std::size_t e = 0; e < coeffs.size(); ++e) {
    Monomial xm;
    if (e) xm.push_back({x, static_cast<int>(e)});
    for (const auto& t : coeffs[e].terms()) terms.push_back({multiply(t.mono, xm), t.coeff});
  }
  return Poly::from_terms(std::move(terms));
}

}  // namespace kgsym
