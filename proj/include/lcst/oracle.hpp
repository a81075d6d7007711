#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lcst/ordinal.hpp"

namespace lcst {

// The bounded notation pool cannot certify a supremum at the given
// probe depth, or an input falls outside the pool bound.
struct OracleInconclusive : std::runtime_error {
  explicit OracleInconclusive(const std::string& what)
      : std::runtime_error(what) {}
};

enum class OracleOp { Add, Mul, Exp };

// Order-theoretic evaluator for ordinal arithmetic, independent of the CNF
// routines in ordinal.hpp.  Successor steps are taken explicitly; limit steps
// take the supremum of finitely many probes along the standard fundamental
// sequences (w^{b+1}[n] = w^b * n, w^l[n] = w^{l[n]}, sums delegate to the
// last term).  A supremum is certified against a pool of candidate notations
// derived from the largest probe: the least candidate that strictly dominates
// every probe and whose own fundamental sequence is dominated by the probes.
class OrdinalOracle {
 public:
  explicit OrdinalOracle(int probe_depth = 16) : depth_(probe_depth) {
    if (depth_ < 2) throw OracleInconclusive("probe depth must be >= 2");
  }

  int probe_depth() const { return depth_; }

  Ordinal add(const Ordinal& a, const Ordinal& b) {
    check_input(a);
    check_input(b);
    return add_i(a, b);
  }

  Ordinal mul(const Ordinal& a, const Ordinal& b) {
    check_input(a);
    check_input(b);
    return mul_i(a, b);
  }

  Ordinal exp(const Ordinal& a, const Ordinal& b) {
    check_input(a);
    check_input(b);
    return exp_i(a, b);
  }

  Ordinal eval(OracleOp op, const Ordinal& a, const Ordinal& b) {
    switch (op) {
      case OracleOp::Add: return add(a, b);
      case OracleOp::Mul: return mul(a, b);
      case OracleOp::Exp: return exp(a, b);
    }
    throw OracleInconclusive("unknown op");
  }

  // Standard fundamental sequence of a limit ordinal, n >= 1.
  static Ordinal fundamental(const Ordinal& x, std::uint64_t n) {
    if (!x.is_limit())
      throw PreconditionFailure("fundamental sequence of a non-limit");
    std::vector<Ordinal::Term> prefix = x.terms();
    Ordinal e = prefix.back().exponent;
    if (prefix.back().coeff > 1)
      --prefix.back().coeff;
    else
      prefix.pop_back();
    Ordinal tail;
    if (e.is_successor()) {
      tail = Ordinal::single(structural_pred(e), n);
    } else {
      tail = Ordinal::single(fundamental(e, n), 1);
    }
    // prefix ends above tail's exponent, so this concatenates.
    return join_term(Ordinal::from_terms(std::move(prefix)),
                     tail.terms().front().exponent, tail.terms().front().coeff);
  }

 private:
  using Key = std::pair<Ordinal, Ordinal>;
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return ord_hash(k.first) * 1000003u ^ ord_hash(k.second);
    }
  };
  using Memo = std::unordered_map<Key, Ordinal, KeyHash>;

  void check_input(const Ordinal& x) const {
    if (x.depth() > 6)
      throw OracleInconclusive("input outside the notation pool bound");
  }

  Ordinal add_i(const Ordinal& a, const Ordinal& b) {
    Ordinal acc = a;
    for (const auto& t : b.terms()) acc = add_term(acc, t.exponent, t.coeff);
    return acc;
  }

  Ordinal mul_i(const Ordinal& a, const Ordinal& b) {
    if (a.is_zero() || b.is_zero()) return Ordinal();
    Ordinal acc;
    for (const auto& t : b.terms()) {
      Ordinal piece = mul_single(a, t.exponent);
      Ordinal scaled = piece;
      for (std::uint64_t i = 1; i < t.coeff; ++i) scaled = add_i(scaled, piece);
      acc = acc.is_zero() ? scaled : add_i(acc, scaled);
    }
    return acc;
  }

  Ordinal exp_i(const Ordinal& a, const Ordinal& b) {
    if (b.is_zero()) return Ordinal::nat(1);
    if (a.is_zero()) return Ordinal();
    if (a == Ordinal::nat(1)) return Ordinal::nat(1);
    Ordinal acc = Ordinal::nat(1);
    for (const auto& t : b.terms()) {
      Ordinal piece = exp_single(a, t.exponent);
      Ordinal powered = piece;
      for (std::uint64_t i = 1; i < t.coeff; ++i)
        powered = mul_i(powered, piece);
      acc = (acc == Ordinal::nat(1)) ? powered : mul_i(acc, powered);
    }
    return acc;
  }

  static Ordinal structural_succ(const Ordinal& x) {
    std::vector<Ordinal::Term> ts = x.terms();
    if (!ts.empty() && ts.back().exponent.is_zero())
      ++ts.back().coeff;
    else
      ts.push_back({Ordinal(), 1});
    return Ordinal::from_terms(std::move(ts));
  }

  static Ordinal structural_pred(const Ordinal& x) {
    std::vector<Ordinal::Term> ts = x.terms();
    if (ts.empty() || !ts.back().exponent.is_zero())
      throw PreconditionFailure("predecessor of a non-successor");
    if (ts.back().coeff > 1)
      --ts.back().coeff;
    else
      ts.pop_back();
    return Ordinal::from_terms(std::move(ts));
  }

  // P + w^g * c built structurally: terms of P above g survive, a term at g
  // merges, terms below g are absorbed.
  static Ordinal join_term(const Ordinal& p, const Ordinal& g,
                           std::uint64_t c) {
    std::vector<Ordinal::Term> out;
    std::uint64_t merged = c;
    for (const auto& t : p.terms()) {
      Order o = ord_cmp(t.exponent, g);
      if (o == Order::GT) {
        out.push_back(t);
      } else {
        if (o == Order::EQ) merged += t.coeff;
        break;
      }
    }
    out.push_back({g, merged});
    return Ordinal::from_terms(std::move(out));
  }

  // Candidate suprema derived from the largest probe: for every term
  // position, bump that term's exponent to its successor or to a candidate
  // supremum of the exponent itself.
  static void sup_candidates(const Ordinal& m, std::vector<Ordinal>& out) {
    const auto& ts = m.terms();
    for (std::size_t k = 0; k < ts.size(); ++k) {
      Ordinal prefix = Ordinal::from_terms({ts.begin(), ts.begin() + k});
      std::vector<Ordinal> exps;
      exps.push_back(structural_succ(ts[k].exponent));
      sup_candidates(ts[k].exponent, exps);
      for (auto& g : exps) out.push_back(join_term(prefix, g, 1));
    }
  }

  Ordinal certify_sup(const std::vector<Ordinal>& probes) const {
    Ordinal m;
    for (const auto& p : probes)
      if (ord_cmp(p, m) == Order::GT) m = p;
    bool constant = true;
    for (const auto& p : probes)
      if (!(p == m)) constant = false;
    if (constant) return m;

    std::vector<Ordinal> cands;
    sup_candidates(m, cands);
    std::sort(cands.begin(), cands.end(),
              [](const Ordinal& x, const Ordinal& y) {
                return ord_cmp(x, y) == Order::LT;
              });
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    for (const auto& q : cands) {
      if (ord_cmp(q, m) != Order::GT) continue;
      if (!q.is_limit()) continue;
      bool interleaves = true;
      for (int n = 1; n <= depth_; ++n) {
        if (ord_cmp(fundamental(q, static_cast<std::uint64_t>(n)), m) ==
            Order::GT) {
          interleaves = false;
          break;
        }
      }
      if (interleaves) return q;
    }
    throw OracleInconclusive("no pool candidate certifies the supremum");
  }

  // Y + w^e * c by c explicit unit steps (e > 0) or c explicit successors.
  Ordinal add_term(Ordinal y, const Ordinal& e, std::uint64_t c) {
    if (e.is_zero()) {
      for (std::uint64_t i = 0; i < c; ++i) y = structural_succ(y);
      return y;
    }
    for (std::uint64_t i = 0; i < c; ++i) y = add_unit(y, e);
    return y;
  }

  // Y + w^e for e >= 1: a limit step.  Splits Y at e so the memo key is the
  // affected suffix only.
  Ordinal add_unit(const Ordinal& y, const Ordinal& e) {
    const auto& ts = y.terms();
    std::size_t cut = 0;
    while (cut < ts.size() && ord_cmp(ts[cut].exponent, e) == Order::GT) ++cut;
    Ordinal prefix = Ordinal::from_terms({ts.begin(), ts.begin() + cut});
    Ordinal suffix = Ordinal::from_terms({ts.begin() + cut, ts.end()});

    Key key{suffix, e};
    if (auto it = add_memo_.find(key); it != add_memo_.end())
      return concat(prefix, it->second);

    std::vector<Ordinal> probes;
    probes.reserve(static_cast<std::size_t>(depth_));
    if (e.is_successor()) {
      Ordinal f = structural_pred(e);
      Ordinal q = suffix;
      for (int n = 1; n <= depth_; ++n) {
        q = add_term(q, f, 1);
        probes.push_back(q);
      }
    } else {
      for (int n = 1; n <= depth_; ++n)
        probes.push_back(
            add_term(suffix, fundamental(e, static_cast<std::uint64_t>(n)), 1));
    }
    Ordinal sup = certify_sup(probes);
    add_memo_.emplace(std::move(key), sup);
    return concat(prefix, sup);
  }

  // Literal term-list concatenation; valid because prefix ends strictly above
  // the head of tail.
  static Ordinal concat(const Ordinal& prefix, const Ordinal& tail) {
    if (prefix.is_zero()) return tail;
    if (tail.is_zero()) return prefix;
    std::vector<Ordinal::Term> out = prefix.terms();
    if (ord_cmp(out.back().exponent, tail.terms().front().exponent) ==
        Order::EQ) {
      out.back().coeff += tail.terms().front().coeff;
      out.insert(out.end(), tail.terms().begin() + 1, tail.terms().end());
    } else {
      out.insert(out.end(), tail.terms().begin(), tail.terms().end());
    }
    return Ordinal::from_terms(std::move(out));
  }

  // a * w^b by the recursion a*w^{g+1} = sup_n (a*w^g)*n and
  // a*w^l = sup_n a*w^{l[n]}.
  Ordinal mul_single(const Ordinal& a, const Ordinal& b) {
    if (b.is_zero()) return a;
    Key key{a, b};
    if (auto it = mul_memo_.find(key); it != mul_memo_.end()) return it->second;

    std::vector<Ordinal> probes;
    probes.reserve(static_cast<std::size_t>(depth_));
    if (b.is_successor()) {
      Ordinal x = mul_single(a, structural_pred(b));
      Ordinal q = x;
      for (int n = 1; n <= depth_; ++n) {
        probes.push_back(q);
        if (n < depth_) q = add_i(q, x);
      }
    } else {
      for (int n = 1; n <= depth_; ++n)
        probes.push_back(
            mul_single(a, fundamental(b, static_cast<std::uint64_t>(n))));
    }
    Ordinal sup = certify_sup(probes);
    mul_memo_.emplace(std::move(key), sup);
    return sup;
  }

  // a ^ w^h by the recursion a^{w^{g+1}} = sup_n (a^{w^g})^n and
  // a^{w^l} = sup_n a^{w^{l[n]}}.
  Ordinal exp_single(const Ordinal& a, const Ordinal& h) {
    if (h.is_zero()) return a;
    Key key{a, h};
    if (auto it = exp_memo_.find(key); it != exp_memo_.end()) return it->second;

    std::vector<Ordinal> probes;
    probes.reserve(static_cast<std::size_t>(depth_));
    if (h.is_successor()) {
      Ordinal x = exp_single(a, structural_pred(h));
      Ordinal q = x;
      for (int n = 1; n <= depth_; ++n) {
        probes.push_back(q);
        if (n < depth_) q = mul_i(q, x);
      }
    } else {
      for (int n = 1; n <= depth_; ++n)
        probes.push_back(
            exp_single(a, fundamental(h, static_cast<std::uint64_t>(n))));
    }
    Ordinal sup = certify_sup(probes);
    exp_memo_.emplace(std::move(key), sup);
    return sup;
  }

  int depth_;
  Memo add_memo_;
  Memo mul_memo_;
  Memo exp_memo_;
};

inline Ordinal oracle_eval(OracleOp op, const Ordinal& a, const Ordinal& b,
                           int probe_depth = 16) {
  OrdinalOracle oracle(probe_depth);
  return oracle.eval(op, a, b);
}

}  // namespace lcst
