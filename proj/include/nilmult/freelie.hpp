#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "nilmult/errors.hpp"
#include "nilmult/hall_basis.hpp"
#include "nilmult/subspace.hpp"

namespace nilmult {

class TruncatedFreeAlgebra;

/// Sparse exact-rational combination of Hall basis elements of one
/// TruncatedFreeAlgebra. Zero coefficients are never stored, so the support
/// map is canonical and the smallest stored rank has the element's minimal
/// length (ranks are ordered length-first).
class FreeLieElement {
 public:
  explicit FreeLieElement(const TruncatedFreeAlgebra* algebra = nullptr)
      : algebra_(algebra) {}

  const TruncatedFreeAlgebra* algebra() const { return algebra_; }
  const std::map<int, Rational>& coefficients() const { return coeff_; }
  bool is_zero() const { return coeff_.empty(); }

  Rational coefficient(int rank) const {
    auto it = coeff_.find(rank);
    return it == coeff_.end() ? Rational(0) : it->second;
  }

  void add_term(int rank, const Rational& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = coeff_.try_emplace(rank, c);
    if (!inserted) {
      it->second += c;
      if (sgn(it->second) == 0) coeff_.erase(it);
    }
  }

  FreeLieElement& operator+=(const FreeLieElement& o) {
    require_same_algebra(o);
    for (const auto& [rank, c] : o.coeff_) add_term(rank, c);
    return *this;
  }

  FreeLieElement& operator-=(const FreeLieElement& o) {
    require_same_algebra(o);
    for (const auto& [rank, c] : o.coeff_) add_term(rank, -c);
    return *this;
  }

  FreeLieElement& operator*=(const Rational& s) {
    if (sgn(s) == 0) {
      coeff_.clear();
    } else {
      for (auto& [rank, c] : coeff_) c *= s;
    }
    return *this;
  }

  friend FreeLieElement operator+(FreeLieElement a, const FreeLieElement& b) {
    a += b;
    return a;
  }
  friend FreeLieElement operator-(FreeLieElement a, const FreeLieElement& b) {
    a -= b;
    return a;
  }
  friend FreeLieElement operator*(const Rational& s, FreeLieElement a) {
    a *= s;
    return a;
  }
  friend FreeLieElement operator-(FreeLieElement a) {
    a *= Rational(-1);
    return a;
  }
  bool operator==(const FreeLieElement& o) const { return coeff_ == o.coeff_; }

  void require_same_algebra(const FreeLieElement& o) const {
    if (algebra_ != o.algebra_)
      throw DimensionMismatch("FreeLieElement: operands from different algebras");
  }

 private:
  const TruncatedFreeAlgebra* algebra_;
  std::map<int, Rational> coeff_;
};

/// The free Lie algebra on d generators truncated at nilpotency class N:
/// brackets whose total length exceeds N are zero. Coordinates are the Hall
/// basis ranks; the homogeneous component of length t is the coordinate
/// block [first_rank_of_length(t), first_rank_of_length(t+1)).
///
/// Externally immutable; the bracket memo table fills lazily under a mutex,
/// and entries are pure functions of the pair, so results are deterministic
/// regardless of thread interleaving.
class TruncatedFreeAlgebra {
 public:
  TruncatedFreeAlgebra(int generators, int max_length,
                       std::size_t ceiling = HallBasis::kDefaultCeiling)
      : basis_(generators, max_length, ceiling) {}

  TruncatedFreeAlgebra(const TruncatedFreeAlgebra&) = delete;
  TruncatedFreeAlgebra& operator=(const TruncatedFreeAlgebra&) = delete;

  const HallBasis& basis() const { return basis_; }
  int dim() const { return basis_.size(); }
  int generators() const { return basis_.generators(); }
  int max_length() const { return basis_.max_length(); }

  FreeLieElement zero() const { return FreeLieElement(this); }

  FreeLieElement basis_element(int rank) const {
    FreeLieElement e(this);
    e.add_term(rank, Rational(1));
    return e;
  }

  FreeLieElement generator(int g) const {
    return basis_element(basis_.generator_rank(g));
  }

  /// Hall-basis expansion of the bracket [u, v] of two basic commutators.
  ///
  /// Rewriting: with u > v (swap with a sign otherwise) and u = [s, t], the
  /// pair is already basic unless v < t, in which case the Jacobi identity
  /// rewrites [[s,t],v] = [[s,v],t] + [s,[t,v]]. The recursion terminates:
  /// the inner brackets [s,v] and [t,v] have strictly smaller total length,
  /// and every same-length pair (a,b), a > b, spawned from (u,v) has either
  /// a longer right component than v, or an equally long right component of
  /// strictly larger rank. Both quantities are bounded within a fixed total
  /// length, so the measure
  ///     (total length, length of the right component, rank of the right
  ///      component)
  /// ordered lexicographically (first decreasing, the others increasing)
  /// is well-founded.
  FreeLieElement bracket_basis(int u, int v) const {
    if (u == v) return zero();
    if (u < v) {
      FreeLieElement e = bracket_basic_ordered(v, u);
      e *= Rational(-1);
      return e;
    }
    return bracket_basic_ordered(u, v);
  }

  /// Bilinear extension of bracket_basis. Truncation past the class bound is
  /// silent: overlong components simply vanish.
  FreeLieElement bracket(const FreeLieElement& a, const FreeLieElement& b) const {
    require_mine(a);
    require_mine(b);
    FreeLieElement out(this);
    for (auto i = a.coefficients().begin(); i != a.coefficients().end(); ++i) {
      for (auto j = b.coefficients().begin(); j != b.coefficients().end(); ++j) {
        if (i->first == j->first) continue;
        int hi = std::max(i->first, j->first);
        int lo = std::min(i->first, j->first);
        if (basis_.at(hi).length + basis_.at(lo).length > max_length()) continue;
        Rational c = i->second * j->second;
        if (i->first < j->first) c = -c;
        const FreeLieElement& expansion = bracket_basic_ordered(hi, lo);
        for (const auto& [rank, coeff] : expansion.coefficients())
          out.add_term(rank, c * coeff);
      }
    }
    return out;
  }

  /// [[..[x_w1, x_w2], x_w3].., x_wk] for a word of 1-based generator
  /// indices.
  FreeLieElement left_normed(const std::vector<int>& word) const {
    if (word.empty())
      throw std::invalid_argument("left_normed: empty generator word");
    FreeLieElement e = generator(word[0]);
    for (std::size_t i = 1; i < word.size(); ++i)
      e = bracket(e, generator(word[i]));
    return e;
  }

  /// dim F^c / F^{c+window} = sum of Witt counts over lengths
  /// c .. c+window-1. The window must fit inside the truncation.
  Integer graded_dimension(int c, int window) const {
    if (c < 1 || window < 0 || c + window - 1 > max_length())
      throw std::invalid_argument("graded_dimension: window outside truncation");
    Integer total = 0;
    for (int t = c; t < c + window; ++t) total += witt(generators(), t);
    return total;
  }

  Vec to_dense(const FreeLieElement& e) const {
    require_mine(e);
    Vec v(dim());
    for (const auto& [rank, c] : e.coefficients()) v[rank] = c;
    return v;
  }

  FreeLieElement from_dense(const Vec& v) const {
    if ((int)v.size() != dim())
      throw DimensionMismatch("from_dense: wrong dimension");
    FreeLieElement e(this);
    for (int rank = 0; rank < dim(); ++rank) e.add_term(rank, v[rank]);
    return e;
  }

  /// Number of memoized bracket expansions; exposed for consistency tests.
  std::size_t memo_size() const {
    std::lock_guard<std::mutex> lock(memo_mutex_);
    return memo_.size();
  }

 private:
  void require_mine(const FreeLieElement& e) const {
    if (e.algebra() != this)
      throw DimensionMismatch("FreeLieElement belongs to a different algebra");
  }

  static std::uint64_t pair_key(int u, int v) {
    return (std::uint64_t)(std::uint32_t)u << 32 | (std::uint32_t)v;
  }

  // requires u > v
  const FreeLieElement& bracket_basic_ordered(int u, int v) const {
    {
      std::lock_guard<std::mutex> lock(memo_mutex_);
      auto it = memo_.find(pair_key(u, v));
      if (it != memo_.end()) return it->second;
    }
    FreeLieElement result = compute_bracket(u, v);
    std::lock_guard<std::mutex> lock(memo_mutex_);
    auto [it, inserted] = memo_.try_emplace(pair_key(u, v), std::move(result));
    return it->second;
  }

  FreeLieElement compute_bracket(int u, int v) const {
    const BasicCommutator& cu = basis_.at(u);
    const BasicCommutator& cv = basis_.at(v);
    if (cu.length + cv.length > max_length()) return zero();
    if (cu.is_generator() || v >= cu.right) {
      // already a basic commutator
      int rank = basis_.pair_rank(u, v);
      if (rank < 0)
        throw ValidationError("Hall basis is missing a required bracket");
      return basis_element(rank);
    }
    // u = [s,t] with v < t: Jacobi rewrites [[s,t],v] = [[s,v],t] + [s,[t,v]]
    FreeLieElement left = bracket(bracket_basis(cu.left, v), basis_element(cu.right));
    FreeLieElement right = bracket(basis_element(cu.left), bracket_basis(cu.right, v));
    return left + right;
  }

  HallBasis basis_;
  mutable std::unordered_map<std::uint64_t, FreeLieElement> memo_;
  mutable std::mutex memo_mutex_;
};

}  // namespace nilmult
