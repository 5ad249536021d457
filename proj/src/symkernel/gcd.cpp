// Multivariate polynomial gcd over Q.
//
// Variables present in only one operand are eliminated first by taking the
// content with respect to them; what remains is handled by a recursive
// primitive pseudo-remainder sequence in one main variable.

#include <algorithm>
#include <functional>
#include <map>
#include <unordered_map>

#include "kgsym/expr.hpp"

namespace kgsym {

namespace {

using UPoly = std::vector<Poly>;

Poly monic(const Poly& p) {
  if (p.is_zero()) return p;
  const Rational& lc = p.leading().coeff;
  if (lc == 1) return p;
  return p.scaled(Rational(1) / lc);
}

void trim(UPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

Poly exact(const Poly& a, const Poly& b) {
  auto q = divide_exact(a, b);
  if (!q) throw MathError("internal: inexact division in gcd");
  return *q;
}

Poly content(const UPoly& p) {
  Poly g;
  // Start from the smallest coefficient; it bounds the result fastest.
  std::vector<const Poly*> order;
  for (const auto& c : p)
    if (!c.is_zero()) order.push_back(&c);
  std::sort(order.begin(), order.end(), [](const Poly* a, const Poly* b) { return a->size() < b->size(); });
  for (const Poly* c : order) {
    g = gcd(g, *c);
    if (g.is_constant()) return Poly(Rational(1));
  }
  return g;
}

UPoly divide_coeffs(const UPoly& p, const Poly& c) {
  if (c.is_one()) return p;
  UPoly r;
  r.reserve(p.size());
  for (const auto& q : p) r.push_back(exact(q, c));
  return r;
}

UPoly pseudo_remainder(const UPoly& a, const UPoly& b) {
  UPoly r = a;
  trim(r);
  const std::size_t db = b.size() - 1;
  const Poly& lcb = b.back();
  while (!r.empty() && r.size() - 1 >= db) {
    const std::size_t dr = r.size() - 1;
    const Poly lcr = r.back();
    const std::size_t shift = dr - db;
    UPoly next(dr);
    for (std::size_t i = 0; i < dr; ++i) {
      next[i] = lcb * r[i];
      if (i >= shift) next[i] = next[i] - lcr * b[i - shift];
    }
    r = std::move(next);
    trim(r);
  }
  return r;
}

std::vector<Atom> set_difference(const std::vector<Atom>& a, const std::vector<Atom>& b) {
  std::vector<Atom> r;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r),
                      [](Atom x, Atom y) { return compare_atoms(x, y) < 0; });
  return r;
}

// gcd(p, q) where `only` lists the variables of p absent from q: any common
// factor divides every coefficient of p with respect to those variables.
Poly gcd_via_coefficients(const Poly& p, const std::vector<Atom>& only, const Poly& q) {
  auto is_only = [&](Atom a) {
    return std::binary_search(only.begin(), only.end(), a,
                              [](Atom x, Atom y) { return compare_atoms(x, y) < 0; });
  };
  std::map<Monomial, std::vector<Term>, MonomialLess> groups;
  for (const auto& t : p.terms()) {
    Monomial key;
    Monomial rest;
    for (const auto& f : t.mono) (is_only(f.atom) ? key : rest).push_back(f);
    groups[std::move(key)].push_back({std::move(rest), t.coeff});
  }
  std::vector<Poly> coeffs;
  coeffs.reserve(groups.size());
  for (auto& [k, terms] : groups) coeffs.push_back(Poly::from_terms(std::move(terms)));
  std::sort(coeffs.begin(), coeffs.end(), [](const Poly& a, const Poly& b) { return a.size() < b.size(); });
  Poly g = q;
  for (const auto& c : coeffs) {
    g = gcd(g, c);
    if (g.is_constant()) return Poly(Rational(1));
  }
  return g;
}

using QPoly = std::vector<Rational>;  // dense, index = degree

void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly qrem(QPoly a, const QPoly& b) {
  const std::size_t db = b.size() - 1;
  while (a.size() >= b.size()) {
    const Rational f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i <= db; ++i) a[i + shift] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

std::size_t qgcd_degree(QPoly a, QPoly b) {
  while (!b.empty()) {
    QPoly r = qrem(std::move(a), b);
    a = std::move(b);
    b = std::move(r);
  }
  return a.empty() ? 0 : a.size() - 1;
}

Rational sample_value(Atom a) { return Rational(static_cast<long>(std::hash<std::string>{}(a->key) % 89 + 2)); }

// Image of p in Q[x] with every other atom replaced by its sample value.
QPoly image(const Poly& p, Atom x) {
  QPoly out(static_cast<std::size_t>(p.degree(x)) + 1);
  std::unordered_map<Atom, Rational> values;
  for (const auto& t : p.terms()) {
    Rational c = t.coeff;
    std::size_t k = 0;
    for (const auto& f : t.mono) {
      if (f.atom == x) {
        k = static_cast<std::size_t>(f.exp);
        continue;
      }
      auto it = values.find(f.atom);
      if (it == values.end()) it = values.emplace(f.atom, sample_value(f.atom)).first;
      Rational v = 1;
      for (int e = 0; e < f.exp; ++e) v *= it->second;
      c *= v;
    }
    out[k] += c;
  }
  return out;
}

// Sound certificate that gcd(a, b) is constant: for every shared atom x the
// images keep their x-degree and are coprime, so the gcd has x-degree 0.
// A false result is inconclusive.
bool certainly_coprime(const Poly& a, const Poly& b) {
  for (Atom x : a.atoms()) {
    const int db = b.degree(x);
    if (db == 0) continue;
    QPoly ia = image(a, x);
    QPoly ib = image(b, x);
    if (ia.back() == 0 || ib.back() == 0) return false;
    if (qgcd_degree(std::move(ia), std::move(ib)) > 0) return false;
  }
  return true;
}

Poly gcd_primitive(const Poly& a, const Poly& b) {
  if (a.is_constant() || b.is_constant() || a.size() == 1 || b.size() == 1) return Poly(Rational(1));
  if (certainly_coprime(a, b)) return Poly(Rational(1));

  const auto va = a.atoms();
  const auto vb = b.atoms();
  if (auto only = set_difference(va, vb); !only.empty()) return gcd_via_coefficients(a, only, b);
  if (auto only = set_difference(vb, va); !only.empty()) return gcd_via_coefficients(b, only, a);

  if (a.size() <= b.size()) {
    if (divide_exact(b, a)) return monic(a);
  } else if (divide_exact(a, b)) {
    return monic(b);
  }

  Atom x = va.front();
  int best = -1;
  for (Atom v : va) {
    int d = std::max(a.degree(v), b.degree(v));
    if (best < 0 || d < best) {
      best = d;
      x = v;
    }
  }

  UPoly ua = to_univariate(a, x);
  UPoly ub = to_univariate(b, x);
  Poly ca = content(ua);
  Poly cb = content(ub);
  Poly c = gcd(ca, cb);
  ua = divide_coeffs(ua, ca);
  ub = divide_coeffs(ub, cb);
  if (ua.size() < ub.size()) std::swap(ua, ub);

  UPoly g;
  while (true) {
    UPoly r = pseudo_remainder(ua, ub);
    if (r.empty()) {
      g = std::move(ub);
      break;
    }
    if (r.size() == 1) {
      g = {Poly(Rational(1))};
      break;
    }
    ua = std::move(ub);
    ub = divide_coeffs(r, content(r));
  }
  return monic(c * from_univariate(g, x));
}

}  // namespace

Monomial monomial_gcd(const Monomial& a, const Monomial& b) {
  Monomial r;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    int c = compare_atoms(a[i].atom, b[j].atom);
    if (c < 0) {
      ++i;
    } else if (c > 0) {
      ++j;
    } else {
      r.push_back({a[i].atom, std::min(a[i].exp, b[j].exp)});
      ++i;
      ++j;
    }
  }
  return r;
}

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return monic(b);
  if (b.is_zero()) return monic(a);
  if (a.is_constant() || b.is_constant()) return Poly(Rational(1));
  const Monomial ma = a.monomial_content();
  const Monomial mb = b.monomial_content();
  const Monomial mg = monomial_gcd(ma, mb);
  Poly g = gcd_primitive(a.divided_by_monomial(ma), b.divided_by_monomial(mb));
  return monic(g.times_monomial(mg, Rational(1)));
}

}  // namespace kgsym
