#pragma once

// Cantor normal form arithmetic for the E and F hierarchies, and the formal
// hat assignment attaching an expression over u-symbols to each ordinal
// below E(2m+3).

#include <cctype>
#include <cstdint>
#include <string>
#include <vector>

#include "core.hpp"

namespace leveltree {

// ---------------------------------------------------------------------------
// CNF ordinals: sum of w^exp * coeff with strictly decreasing exponents.

struct CNFOrdinal {
  std::vector<std::pair<CNFOrdinal, std::uint64_t>> terms;

  bool is_zero() const { return terms.empty(); }

  static CNFOrdinal zero() { return {}; }
  static CNFOrdinal nat(std::uint64_t n) {
    CNFOrdinal o;
    if (n) o.terms.push_back({zero(), n});
    return o;
  }
  static CNFOrdinal omega() { return omega_pow(nat(1)); }
  static CNFOrdinal omega_pow(CNFOrdinal e) {
    CNFOrdinal o;
    o.terms.push_back({std::move(e), 1});
    return o;
  }

  bool is_finite() const {
    return terms.empty() || (terms.size() == 1 && terms[0].first.is_zero());
  }

  friend bool operator==(const CNFOrdinal&, const CNFOrdinal&) = default;
};

inline int cnf_compare(const CNFOrdinal& a, const CNFOrdinal& b) {
  std::size_t n = std::min(a.terms.size(), b.terms.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = cnf_compare(a.terms[i].first, b.terms[i].first);
    if (c != 0) return c;
    if (a.terms[i].second != b.terms[i].second)
      return a.terms[i].second < b.terms[i].second ? -1 : 1;
  }
  if (a.terms.size() == b.terms.size()) return 0;
  return a.terms.size() < b.terms.size() ? -1 : 1;
}

inline bool cnf_less(const CNFOrdinal& a, const CNFOrdinal& b) { return cnf_compare(a, b) < 0; }

// canonical invariant: exponents strictly decreasing, coefficients positive
inline bool cnf_canonical(const CNFOrdinal& o) {
  for (std::size_t i = 0; i < o.terms.size(); ++i) {
    if (o.terms[i].second == 0) return false;
    if (!cnf_canonical(o.terms[i].first)) return false;
    if (i + 1 < o.terms.size() &&
        cnf_compare(o.terms[i].first, o.terms[i + 1].first) <= 0)
      return false;
  }
  return true;
}

inline CNFOrdinal cnf_add(const CNFOrdinal& a, const CNFOrdinal& b) {
  if (b.is_zero()) return a;
  const CNFOrdinal& lead = b.terms[0].first;
  CNFOrdinal r;
  std::size_t i = 0;
  while (i < a.terms.size() && cnf_compare(a.terms[i].first, lead) > 0) {
    r.terms.push_back(a.terms[i]);
    ++i;
  }
  r.terms.push_back(b.terms[0]);
  if (i < a.terms.size() && a.terms[i].first == lead)
    r.terms.back().second += a.terms[i].second;
  for (std::size_t j = 1; j < b.terms.size(); ++j) r.terms.push_back(b.terms[j]);
  return r;
}

inline CNFOrdinal cnf_mul(const CNFOrdinal& a, const CNFOrdinal& b) {
  if (a.is_zero() || b.is_zero()) return CNFOrdinal::zero();
  CNFOrdinal r;
  for (const auto& [be, bc] : b.terms) {
    CNFOrdinal part;
    if (be.is_zero()) {
      // right factor finite: multiply the leading coefficient
      part = a;
      part.terms[0].second *= bc;
    } else {
      part.terms.push_back({cnf_add(a.terms[0].first, be), bc});
    }
    r = cnf_add(r, part);
  }
  return r;
}

inline CNFOrdinal cnf_omega_pow(const CNFOrdinal& e) { return CNFOrdinal::omega_pow(e); }

// left subtraction: the unique g with a + g = b, for a <= b
inline CNFOrdinal cnf_left_sub(const CNFOrdinal& a, const CNFOrdinal& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return CNFOrdinal::zero();
  int c = cnf_compare(b.terms[0].first, a.terms[0].first);
  if (c > 0) return b;  // the head of b absorbs a
  // equal leading exponents (a <= b rules out c < 0)
  if (b.terms[0].second > a.terms[0].second) {
    CNFOrdinal r;
    r.terms.push_back({b.terms[0].first, b.terms[0].second - a.terms[0].second});
    for (std::size_t i = 1; i < b.terms.size(); ++i) r.terms.push_back(b.terms[i]);
    return r;
  }
  CNFOrdinal ra, rb;
  for (std::size_t i = 1; i < a.terms.size(); ++i) ra.terms.push_back(a.terms[i]);
  for (std::size_t i = 1; i < b.terms.size(); ++i) rb.terms.push_back(b.terms[i]);
  return cnf_left_sub(ra, rb);
}

// E(0) = 1, E(k+1) = w^E(k)
inline CNFOrdinal E(int k) {
  CNFOrdinal o = CNFOrdinal::nat(1);
  for (int i = 0; i < k; ++i) o = cnf_omega_pow(o);
  return o;
}

// F(1,k) = k, F(l+1,k) = w^F(l,k)
inline CNFOrdinal F(int l, int k) {
  CNFOrdinal o = CNFOrdinal::nat(static_cast<std::uint64_t>(k));
  for (int i = 1; i < l; ++i) o = cnf_omega_pow(o);
  return o;
}

// ---------------------------------------------------------------------------
// Rendering and parsing of CNF literals: `w^(e)*c + ... + n`.

inline std::string cnf_str(const CNFOrdinal& o) {
  if (o.is_zero()) return "0";
  std::string s;
  for (std::size_t i = 0; i < o.terms.size(); ++i) {
    if (i) s += " + ";
    const auto& [e, c] = o.terms[i];
    if (e.is_zero()) {
      s += std::to_string(c);
      continue;
    }
    if (e == CNFOrdinal::nat(1))
      s += "w";
    else
      s += "w^(" + cnf_str(e) + ")";
    if (c != 1) s += "*" + std::to_string(c);
  }
  return s;
}

namespace cnfparse {

struct Cursor {
  const std::string& s;
  std::size_t i = 0;

  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    skip();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  bool peek(char c) {
    skip();
    return i < s.size() && s[i] == c;
  }
};

inline std::optional<CNFOrdinal> parse_sum(Cursor& c);

inline std::optional<CNFOrdinal> parse_term(Cursor& c) {
  c.skip();
  if (c.i >= c.s.size()) return std::nullopt;
  if (std::isdigit(static_cast<unsigned char>(c.s[c.i]))) {
    std::uint64_t n = 0;
    while (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i])))
      n = n * 10 + static_cast<std::uint64_t>(c.s[c.i++] - '0');
    return CNFOrdinal::nat(n);
  }
  if (c.s[c.i] != 'w') return std::nullopt;
  ++c.i;
  CNFOrdinal e = CNFOrdinal::nat(1);
  if (c.eat('^')) {
    if (c.eat('(')) {
      auto inner = parse_sum(c);
      if (!inner || !c.eat(')')) return std::nullopt;
      e = *inner;
    } else {
      auto inner = parse_term(c);
      if (!inner) return std::nullopt;
      e = *inner;
    }
  }
  std::uint64_t coeff = 1;
  if (c.eat('*')) {
    c.skip();
    if (c.i >= c.s.size() || !std::isdigit(static_cast<unsigned char>(c.s[c.i])))
      return std::nullopt;
    coeff = 0;
    while (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i])))
      coeff = coeff * 10 + static_cast<std::uint64_t>(c.s[c.i++] - '0');
  }
  CNFOrdinal t;
  if (coeff) t.terms.push_back({e, coeff});
  return t;
}

inline std::optional<CNFOrdinal> parse_sum(Cursor& c) {
  auto first = parse_term(c);
  if (!first) return std::nullopt;
  CNFOrdinal acc = *first;
  while (c.peek('+')) {
    c.eat('+');
    auto next = parse_term(c);
    if (!next) return std::nullopt;
    acc = cnf_add(acc, *next);
  }
  return acc;
}

}  // namespace cnfparse

inline std::optional<CNFOrdinal> cnf_parse(const std::string& s) {
  cnfparse::Cursor c{s};
  auto r = cnfparse::parse_sum(c);
  if (!r) return std::nullopt;
  c.skip();
  if (c.i != s.size()) return std::nullopt;
  return r;
}

// ---------------------------------------------------------------------------
// The hat assignment. A hat expression is a sum of products; each product
// multiplies u-symbols u^(2m+1)_(eta+1) and ends in an optional tail, with
// finite ordinals as leaves.

struct HatExpression {
  struct Product {
    int level = 1;                       // 2m+1 of the u-symbols
    std::vector<CNFOrdinal> subscripts;  // the eta_i + 1 values, in order
    std::vector<HatExpression> tail;     // empty or a single factor
  };
  bool leaf = false;
  CNFOrdinal value;               // leaf case: a finite ordinal
  std::vector<Product> summands;  // otherwise

  friend bool operator==(const HatExpression& a, const HatExpression& b) {
    if (a.leaf != b.leaf) return false;
    if (a.leaf) return a.value == b.value;
    if (a.summands.size() != b.summands.size()) return false;
    for (std::size_t i = 0; i < a.summands.size(); ++i) {
      const auto& x = a.summands[i];
      const auto& y = b.summands[i];
      if (x.level != y.level || !(x.subscripts == y.subscripts) || !(x.tail == y.tail))
        return false;
    }
    return true;
  }
};

inline std::string hat_str(const HatExpression& h) {
  if (h.leaf) return cnf_str(h.value);
  if (h.summands.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < h.summands.size(); ++i) {
    if (i) s += " + ";
    const auto& p = h.summands[i];
    for (std::size_t j = 0; j < p.subscripts.size(); ++j) {
      if (j) s += "*";
      s += "u^(" + std::to_string(p.level) + ")_(" + cnf_str(p.subscripts[j]) + ")";
    }
    if (!p.tail.empty()) {
      if (!p.subscripts.empty()) s += "*";
      s += "(" + hat_str(p.tail[0]) + ")";
    } else if (p.subscripts.empty()) {
      s += "1";
    }
  }
  return s;
}

// hat(xi, m), defined for 0 < xi < E(2m+3); delegates below E(2m+1) and
// bottoms out at finite leaves.
inline std::optional<HatExpression> hat(const CNFOrdinal& xi, int m);

namespace hatdetail {

// hat of w^eta at level m, eta < E(2m+2)
inline std::optional<HatExpression> hat_pow(const CNFOrdinal& eta, int m) {
  CNFOrdinal w_eta = cnf_omega_pow(eta);
  if (cnf_less(w_eta, E(2 * m + 1))) return hat(w_eta, m);
  // split eta at E(2m): leading terms w^(E(2m)+eta_i), remainder chi
  CNFOrdinal e2m = E(2 * m);
  HatExpression::Product p;
  p.level = 2 * m + 1;
  CNFOrdinal chi;
  for (const auto& [exp, coeff] : eta.terms) {
    if (!cnf_less(exp, e2m)) {
      // exp = E(2m) + eta_i
      CNFOrdinal sub = cnf_left_sub(e2m, exp);
      for (std::uint64_t i = 0; i < coeff; ++i)
        p.subscripts.push_back(cnf_add(sub, CNFOrdinal::nat(1)));
    } else {
      chi.terms.push_back({exp, coeff});
    }
  }
  if (!chi.is_zero()) {
    std::optional<HatExpression> t;
    if (CompatFlags::instance().hat_clause2 == "chi") {
      cover("hat.clause2-chi");
      t = hat(chi, m);
    } else {
      cover("hat.clause2-wchi");
      t = hat(cnf_omega_pow(chi), m);
    }
    if (!t) return std::nullopt;
    p.tail.push_back(*t);
  } else {
    cover("hat.clause2-empty");
  }
  HatExpression h;
  h.summands.push_back(std::move(p));
  return h;
}

}  // namespace hatdetail

inline std::optional<HatExpression> hat(const CNFOrdinal& xi, int m) {
  if (xi.is_zero() || m < 0) return std::nullopt;
  if (!cnf_less(xi, E(2 * m + 3))) return std::nullopt;
  if (cnf_less(xi, E(2 * m + 1))) {
    if (m > 0) {
      cover("hat.clause1");
      return hat(xi, m - 1);
    }
    // below E(1) = w: finite leaf
    cover("hat.leaf");
    HatExpression h;
    h.leaf = true;
    h.value = xi;
    return h;
  }
  // clause 3: sum over the CNF summands
  cover("hat.clause3");
  HatExpression out;
  for (const auto& [exp, coeff] : xi.terms) {
    for (std::uint64_t i = 0; i < coeff; ++i) {
      auto part = hatdetail::hat_pow(exp, m);
      if (!part) return std::nullopt;
      if (part->leaf) {
        // fold finite leaves into one trailing leaf product
        HatExpression::Product p;
        p.level = 2 * m + 1;
        p.tail.push_back(*part);
        out.summands.push_back(std::move(p));
      } else {
        for (auto& s : part->summands) out.summands.push_back(std::move(s));
      }
    }
  }
  return out;
}

}  // namespace leveltree
