#pragma once

#include <cstdint>
#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lcst/errors.hpp"

namespace lcst {

// Representation limits for the CNF universe.  Every toolkit construction
// lives far below omega^omega, so the defaults are generous.
struct OrdinalLimits {
  int max_depth = 8;                                  // exponent nesting
  std::uint64_t max_coeff = std::uint64_t{1} << 62;   // per-term coefficient
  std::size_t max_terms = 4096;                       // per-value term count
};

inline OrdinalLimits& ordinal_limits() {
  static OrdinalLimits limits;
  return limits;
}

// An ordinal below epsilon_0 in Cantor normal form:
//   w^e1 * c1 + w^e2 * c2 + ... + w^ek * ck
// with e1 > e2 > ... > ek (exponents again ordinals) and all ci >= 1.
// The empty term list is 0.  The representation is canonical, so structural
// equality coincides with ordinal equality.
class Ordinal {
 public:
  struct Term {
    Ordinal exponent;
    std::uint64_t coeff = 1;
    bool operator==(const Term&) const = default;
  };

  Ordinal() = default;  // zero

  static Ordinal nat(std::uint64_t n) {
    Ordinal o;
    if (n > 0) o.terms_.push_back({Ordinal(), n});
    return o;
  }

  static Ordinal omega() { return single(nat(1), 1); }

  // w^exp * coeff; coeff == 0 yields zero.
  static Ordinal single(Ordinal exp, std::uint64_t coeff) {
    Ordinal o;
    if (coeff > 0) o.terms_.push_back({std::move(exp), coeff});
    return o;
  }

  // Constructs from raw terms; asserts canonicity in debug builds.
  static Ordinal from_terms(std::vector<Term> terms) {
    Ordinal o;
    o.terms_ = std::move(terms);
    return o;
  }

  const std::vector<Term>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }

  // Finite ordinals are 0 or a single term with exponent 0.
  bool is_finite() const {
    return terms_.empty() ||
           (terms_.size() == 1 && terms_[0].exponent.is_zero());
  }

  std::optional<std::uint64_t> as_nat() const {
    if (terms_.empty()) return 0;
    if (terms_.size() == 1 && terms_[0].exponent.is_zero())
      return terms_[0].coeff;
    return std::nullopt;
  }

  // A successor ordinal has a finite last term; limits and 0 do not.
  bool is_successor() const {
    return !terms_.empty() && terms_.back().exponent.is_zero();
  }
  bool is_limit() const {
    return !terms_.empty() && !terms_.back().exponent.is_zero();
  }

  bool operator==(const Ordinal&) const = default;

  int depth() const {
    int d = 0;
    for (const Term& t : terms_) {
      int e = t.exponent.depth() + 1;
      if (e > d) d = e;
    }
    return d;
  }

 private:
  std::vector<Term> terms_;
};

enum class Order { LT, EQ, GT };

inline Order ord_cmp(const Ordinal& a, const Ordinal& b) {
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  const std::size_t n = std::min(ta.size(), tb.size());
  for (std::size_t i = 0; i < n; ++i) {
    Order e = ord_cmp(ta[i].exponent, tb[i].exponent);
    if (e != Order::EQ) return e;
    if (ta[i].coeff != tb[i].coeff)
      return ta[i].coeff < tb[i].coeff ? Order::LT : Order::GT;
  }
  if (ta.size() == tb.size()) return Order::EQ;
  return ta.size() < tb.size() ? Order::LT : Order::GT;
}

inline bool operator<(const Ordinal& a, const Ordinal& b) {
  return ord_cmp(a, b) == Order::LT;
}
inline bool operator<=(const Ordinal& a, const Ordinal& b) {
  return ord_cmp(a, b) != Order::GT;
}
inline bool operator>(const Ordinal& a, const Ordinal& b) {
  return ord_cmp(a, b) == Order::GT;
}
inline bool operator>=(const Ordinal& a, const Ordinal& b) {
  return ord_cmp(a, b) != Order::LT;
}

namespace detail {

inline std::uint64_t checked_coeff_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r) || r > ordinal_limits().max_coeff)
    throw RepresentationOverflow("coefficient sum exceeds limit");
  return r;
}

inline std::uint64_t checked_coeff_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r) || r > ordinal_limits().max_coeff)
    throw RepresentationOverflow("coefficient product exceeds limit");
  return r;
}

inline void check_depth(const Ordinal& o) {
  if (o.depth() > ordinal_limits().max_depth)
    throw RepresentationOverflow("CNF nesting depth exceeds limit");
}

}  // namespace detail

// Ordinal sum in CNF: terms of `a` strictly below the leading exponent of `b`
// are absorbed.
inline Ordinal ord_add(const Ordinal& a, const Ordinal& b) {
  if (b.is_zero()) return a;
  if (a.is_zero()) return b;
  const Ordinal& lead_exp = b.terms().front().exponent;
  std::vector<Ordinal::Term> out;
  out.reserve(a.terms().size() + b.terms().size());
  std::uint64_t merged = b.terms().front().coeff;
  for (const auto& t : a.terms()) {
    Order c = ord_cmp(t.exponent, lead_exp);
    if (c == Order::GT) {
      out.push_back(t);
    } else {
      if (c == Order::EQ) merged = detail::checked_coeff_add(merged, t.coeff);
      break;
    }
  }
  out.push_back({lead_exp, merged});
  out.insert(out.end(), b.terms().begin() + 1, b.terms().end());
  return Ordinal::from_terms(std::move(out));
}

// Left subtraction: the unique z with b + z = a, defined for b <= a.
inline Ordinal ord_sub_left(const Ordinal& a, const Ordinal& b) {
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  std::size_t i = 0;
  while (i < ta.size() && i < tb.size() && ta[i] == tb[i]) ++i;
  if (i == tb.size()) {
    // b is a term-list prefix of a; the remainder concatenates.
    return Ordinal::from_terms({ta.begin() + i, ta.end()});
  }
  if (i == ta.size())
    throw PreconditionFailure("ord_sub_left: subtrahend exceeds minuend");
  Order e = ord_cmp(tb[i].exponent, ta[i].exponent);
  if (e == Order::GT || (e == Order::EQ && tb[i].coeff > ta[i].coeff))
    throw PreconditionFailure("ord_sub_left: subtrahend exceeds minuend");
  std::vector<Ordinal::Term> out;
  if (e == Order::EQ) {
    out.push_back({ta[i].exponent, ta[i].coeff - tb[i].coeff});
    out.insert(out.end(), ta.begin() + i + 1, ta.end());
  } else {
    // tb[i].exponent < ta[i].exponent: everything from position i survives.
    out.insert(out.end(), ta.begin() + i, ta.end());
  }
  return Ordinal::from_terms(std::move(out));
}

inline Ordinal succ(const Ordinal& a) { return ord_add(a, Ordinal::nat(1)); }

// Ordinal product via left distributivity over the CNF of b.
inline Ordinal ord_mul(const Ordinal& a, const Ordinal& b) {
  if (a.is_zero() || b.is_zero()) return Ordinal();
  const Ordinal& lam = a.terms().front().exponent;
  Ordinal acc;
  for (const auto& t : b.terms()) {
    Ordinal piece;
    if (t.exponent.is_zero()) {
      // a * n: the leading coefficient scales, the tail rides along once.
      std::vector<Ordinal::Term> terms = a.terms();
      terms.front().coeff =
          detail::checked_coeff_mul(terms.front().coeff, t.coeff);
      piece = Ordinal::from_terms(std::move(terms));
    } else {
      piece = Ordinal::single(ord_add(lam, t.exponent), t.coeff);
    }
    acc = ord_add(acc, piece);
  }
  detail::check_depth(acc);
  return acc;
}

// Quotient and remainder: a = d*q + r with r < d.
inline std::pair<Ordinal, Ordinal> ord_divmod(const Ordinal& a,
                                              const Ordinal& d) {
  if (d.is_zero()) throw DivisionByZero();
  Ordinal q;
  Ordinal r = a;
  const Ordinal& e = d.terms().front().exponent;
  const std::uint64_t c = d.terms().front().coeff;
  while (ord_cmp(r, d) != Order::LT) {
    const Ordinal& f = r.terms().front().exponent;
    const std::uint64_t g = r.terms().front().coeff;
    if (ord_cmp(f, e) == Order::GT) {
      // d * (w^{f-e} * g) = w^f * g, the leading term of r.
      q = ord_add(q, Ordinal::single(ord_sub_left(f, e), g));
      r = Ordinal::from_terms({r.terms().begin() + 1, r.terms().end()});
    } else {
      std::uint64_t k = g / c;
      Ordinal dk = ord_mul(d, Ordinal::nat(k));
      if (ord_cmp(dk, r) == Order::GT) {
        --k;
        dk = ord_mul(d, Ordinal::nat(k));
      }
      q = ord_add(q, Ordinal::nat(k));
      r = ord_sub_left(r, dk);
      break;  // now r < d
    }
  }
  return {std::move(q), std::move(r)};
}

namespace detail {

// a^n for finite n by exponentiation by squaring.
inline Ordinal pow_finite(const Ordinal& a, std::uint64_t n) {
  Ordinal result = Ordinal::nat(1);
  Ordinal base = a;
  while (n > 0) {
    if (n & 1) result = ord_mul(result, base);
    n >>= 1;
    if (n > 0) base = ord_mul(base, base);
    if (result.terms().size() > ordinal_limits().max_terms ||
        base.terms().size() > ordinal_limits().max_terms)
      throw RepresentationOverflow("power expands past term-count limit");
  }
  return result;
}

inline std::uint64_t checked_nat_pow(std::uint64_t m, std::uint64_t n) {
  std::uint64_t r = 1;
  while (n > 0) {
    if (n & 1) r = checked_coeff_mul(r, m);
    n >>= 1;
    if (n > 0 && n < 64) m = checked_coeff_mul(m, m);
  }
  return r;
}

}  // namespace detail

// Ordinal exponentiation a^b, split by the finite/infinite base cases and the
// limit + finite decomposition of b.
inline Ordinal ord_exp(const Ordinal& a, const Ordinal& b) {
  if (b.is_zero()) return Ordinal::nat(1);
  if (a.is_zero()) return Ordinal();
  if (a == Ordinal::nat(1)) return Ordinal::nat(1);

  // Split b into its limit part and finite part.
  std::vector<Ordinal::Term> limit_terms;
  std::uint64_t fin = 0;
  for (const auto& t : b.terms()) {
    if (t.exponent.is_zero())
      fin = t.coeff;
    else
      limit_terms.push_back(t);
  }
  Ordinal limit_part = Ordinal::from_terms(std::move(limit_terms));

  Ordinal result;
  if (a.is_finite()) {
    // m^(w*delta + n) = w^delta * m^n for finite m >= 2.
    const std::uint64_t m = *a.as_nat();
    if (limit_part.is_zero()) {
      result = Ordinal::nat(detail::checked_nat_pow(m, fin));
    } else {
      Ordinal delta = ord_divmod(limit_part, Ordinal::omega()).first;
      result = ord_mul(Ordinal::single(std::move(delta), 1),
                       Ordinal::nat(detail::checked_nat_pow(m, fin)));
    }
  } else {
    // a^(limit) = w^(lambda * limit) for infinite a with leading exponent
    // lambda; the finite part multiplies in on the right.
    result = Ordinal::nat(1);
    if (!limit_part.is_zero()) {
      const Ordinal& lam = a.terms().front().exponent;
      result = Ordinal::single(ord_mul(lam, limit_part), 1);
    }
    if (fin > 0) result = ord_mul(result, detail::pow_finite(a, fin));
  }
  detail::check_depth(result);
  return result;
}

// Canonicity validator: strictly decreasing exponents, positive coefficients,
// recursively canonical exponents.  Used by tests on every constructed value.
inline bool ord_valid(const Ordinal& o) {
  const auto& ts = o.terms();
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (ts[i].coeff == 0 || ts[i].coeff > ordinal_limits().max_coeff)
      return false;
    if (!ord_valid(ts[i].exponent)) return false;
    if (i + 1 < ts.size() &&
        ord_cmp(ts[i].exponent, ts[i + 1].exponent) != Order::GT)
      return false;
  }
  return true;
}

inline std::size_t ord_hash(const Ordinal& o) {
  std::size_t h = 0xcbf29ce484222325ull;
  auto mix = [&h](std::uint64_t v) {
    h ^= v;
    h *= 0x100000001b3ull;
  };
  for (const auto& t : o.terms()) {
    mix(ord_hash(t.exponent));
    mix(t.coeff);
  }
  mix(o.terms().size() + 1);
  return h;
}

struct OrdinalHash {
  std::size_t operator()(const Ordinal& o) const { return ord_hash(o); }
};

// ---------------------------------------------------------------------------
// Text grammar (ASCII):
//   ordinal := "0" | term ("+" term)*
//   term    := nat | "w" | "w^" atom ("*" nat)? | "w" "*" nat
//   atom    := nat | "(" ordinal ")"
// Whitespace is insignificant.  Non-canonical spellings are read with sum
// semantics (terms are ord_add-ed left to right), so parse(format(a)) == a.
// ---------------------------------------------------------------------------

namespace detail {

class OrdinalParser {
 public:
  explicit OrdinalParser(std::string_view text) : text_(text) {}

  Ordinal parse_full() {
    Ordinal o = parse_ordinal();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError(pos_, "end of input");
    return o;
  }

  Ordinal parse_ordinal() {
    skip_ws();
    Ordinal acc = parse_term();
    while (true) {
      skip_ws();
      if (!eat('+')) break;
      acc = ord_add(acc, parse_term());
    }
    return acc;
  }

 private:
  Ordinal parse_term() {
    skip_ws();
    if (peek() == 'w') {
      ++pos_;
      Ordinal exp = Ordinal::nat(1);
      skip_ws();
      if (eat('^')) exp = parse_atom();
      std::uint64_t coeff = 1;
      skip_ws();
      if (eat('*')) coeff = parse_nat();
      return Ordinal::single(std::move(exp), coeff);
    }
    if (is_digit(peek())) return Ordinal::nat(parse_nat());
    throw ParseError(pos_, "term (nat or w)");
  }

  Ordinal parse_atom() {
    skip_ws();
    if (eat('(')) {
      Ordinal o = parse_ordinal();
      skip_ws();
      if (!eat(')')) throw ParseError(pos_, ")");
      return o;
    }
    if (is_digit(peek())) return Ordinal::nat(parse_nat());
    throw ParseError(pos_, "atom (nat or parenthesized ordinal)");
  }

  std::uint64_t parse_nat() {
    skip_ws();
    if (!is_digit(peek())) throw ParseError(pos_, "natural number");
    std::uint64_t v = 0;
    while (is_digit(peek())) {
      std::uint64_t d = static_cast<std::uint64_t>(text_[pos_] - '0');
      if (v > (ordinal_limits().max_coeff - d) / 10)
        throw RepresentationOverflow("literal exceeds coefficient limit");
      v = v * 10 + d;
      ++pos_;
    }
    return v;
  }

  static bool is_digit(char c) { return c >= '0' && c <= '9'; }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  bool eat(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void skip_ws() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t'))
      ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Ordinal ord_parse(std::string_view text) {
  return detail::OrdinalParser(text).parse_full();
}

// Canonical spelling: descending terms, coefficient 1 and exponent 1 omitted,
// non-finite exponents parenthesized.
inline std::string ord_format(const Ordinal& o) {
  if (o.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : o.terms()) {
    if (!first) out += "+";
    first = false;
    if (t.exponent.is_zero()) {
      out += std::to_string(t.coeff);
      continue;
    }
    out += "w";
    if (t.exponent != Ordinal::nat(1)) {
      out += "^";
      if (t.exponent.is_finite()) {
        out += std::to_string(*t.exponent.as_nat());
      } else {
        out += "(" + ord_format(t.exponent) + ")";
      }
    }
    if (t.coeff != 1) out += "*" + std::to_string(t.coeff);
  }
  return out;
}

}  // namespace lcst
