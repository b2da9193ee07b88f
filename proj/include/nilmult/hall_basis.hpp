#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "nilmult/errors.hpp"
#include "nilmult/rational.hpp"

namespace nilmult {

/// Moebius function: mu(1) = 1, mu(m) = 0 when a square divides m,
/// mu(p1...ps) = (-1)^s for distinct primes p1..ps.
inline int mobius(long m) {
  if (m <= 0) throw std::invalid_argument("mobius: argument must be >= 1");
  int s = 0;
  for (long p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      m /= p;
      if (m % p == 0) return 0;
      ++s;
    }
  }
  if (m > 1) ++s;
  return (s % 2 == 0) ? 1 : -1;
}

/// Witt count of basic commutators of length n on d generators:
///   l_d(n) = (1/n) * sum_{m | n} mu(m) d^(n/m),
/// evaluated in exact integer arithmetic.
inline Integer witt(long d, long n) {
  if (d < 1) throw std::invalid_argument("witt: need at least one generator");
  if (n < 1) throw std::invalid_argument("witt: length must be >= 1");
  Integer total = 0;
  for (long m = 1; m <= n; ++m) {
    if (n % m != 0) continue;
    int mu = mobius(m);
    if (mu == 0) continue;
    Integer power;
    mpz_ui_pow_ui(power.get_mpz_t(), (unsigned long)d, (unsigned long)(n / m));
    total += mu * power;
  }
  Integer count = total / n;  // exact: n always divides the sum
  return count;
}

/// One basic commutator: a generator, or a bracket [left, right] of earlier
/// basic commutators. Nodes are identified by their rank in the global
/// order; components are stored as ranks.
struct BasicCommutator {
  int rank = 0;
  int length = 0;
  int generator = 0;  // 1-based generator index; 0 for bracket nodes
  int left = -1;      // rank of the left component, -1 for generators
  int right = -1;     // rank of the right component, -1 for generators

  bool is_generator() const { return generator != 0; }
};

/// The complete ordered set of basic commutators on `generators` generators
/// up to length `max_length`.
///
/// Construction follows the two rules for basic commutators: generators are
/// the commutators of length one, ordered by index; [u, v] of length t is
/// basic when u > v and, if u = [s, t'], additionally v >= t'. Commutators
/// of length t follow all shorter ones; ties inside a length stratum are
/// broken lexicographically by the pair of component ranks, and ranks are
/// assigned only after a stratum is complete, so generation order inside a
/// stratum never leaks into the numbering.
class HallBasis {
 public:
  static constexpr std::size_t kDefaultCeiling = 200000;

  HallBasis(int generators, int max_length,
            std::size_t ceiling = kDefaultCeiling)
      : generators_(generators), max_length_(max_length) {
    if (generators < 1)
      throw std::invalid_argument("HallBasis: need at least one generator");
    if (max_length < 1)
      throw std::invalid_argument("HallBasis: max length must be >= 1");
    stratum_begin_.assign(max_length + 2, 0);
    for (int g = 1; g <= generators; ++g) {
      BasicCommutator c;
      c.rank = (int)elements_.size();
      c.length = 1;
      c.generator = g;
      elements_.push_back(c);
    }
    check_ceiling(ceiling);
    stratum_begin_[2] = (int)elements_.size();
    for (int t = 2; t <= max_length; ++t) {
      std::vector<std::pair<int, int>> candidates;
      for (int left_len = t - 1; 2 * left_len >= t; --left_len) {
        int right_len = t - left_len;
        for (int u = stratum_begin_[left_len]; u < stratum_begin_[left_len + 1]; ++u) {
          int v_end = (left_len == right_len) ? u : stratum_begin_[right_len + 1];
          for (int v = stratum_begin_[right_len]; v < v_end; ++v) {
            if (!elements_[u].is_generator() && v < elements_[u].right) continue;
            candidates.emplace_back(u, v);
          }
        }
      }
      std::sort(candidates.begin(), candidates.end());
      for (auto [u, v] : candidates) {
        BasicCommutator c;
        c.rank = (int)elements_.size();
        c.length = t;
        c.left = u;
        c.right = v;
        pair_rank_[pair_key(u, v)] = c.rank;
        elements_.push_back(c);
        check_ceiling(ceiling);
      }
      stratum_begin_[t + 1] = (int)elements_.size();
    }
  }

  int generators() const { return generators_; }
  int max_length() const { return max_length_; }
  int size() const { return (int)elements_.size(); }
  const BasicCommutator& at(int rank) const { return elements_.at(rank); }

  int generator_rank(int g) const {
    if (g < 1 || g > generators_)
      throw std::invalid_argument("HallBasis: generator index out of range");
    return g - 1;
  }

  /// Rank of the basic commutator [left, right], or -1 when that bracket is
  /// not basic (or exceeds the length bound).
  int pair_rank(int left, int right) const {
    auto it = pair_rank_.find(pair_key(left, right));
    return it == pair_rank_.end() ? -1 : it->second;
  }

  /// First rank of the given length; size() when the stratum is empty or past
  /// the bound. Ranks of length n fill [first_rank_of_length(n),
  /// first_rank_of_length(n+1)).
  int first_rank_of_length(int n) const {
    if (n < 1) return 0;
    if (n > max_length_) return size();
    return stratum_begin_[n];
  }

  int count_of_length(int n) const {
    if (n < 1 || n > max_length_) return 0;
    return stratum_begin_[n + 1] - stratum_begin_[n];
  }

  /// Left-normed bracket notation: [[x2,x1],x1] prints as "[x2,x1,x1]", and
  /// a non-generator right component keeps its own brackets, as in
  /// "[x2,x1,[x3,x1]]".
  std::string render(int rank) const {
    const BasicCommutator& c = at(rank);
    if (c.is_generator()) return "x" + std::to_string(c.generator);
    std::string out = "[";
    append_tokens(rank, out);
    out += "]";
    return out;
  }

 private:
  static std::uint64_t pair_key(int left, int right) {
    return (std::uint64_t)(std::uint32_t)left << 32 | (std::uint32_t)right;
  }

  void check_ceiling(std::size_t ceiling) const {
    if (elements_.size() > ceiling)
      throw ResourceLimit("HallBasis: size ceiling of " +
                          std::to_string(ceiling) + " elements exceeded");
  }

  void append_tokens(int rank, std::string& out) const {
    const BasicCommutator& c = elements_[rank];
    if (c.is_generator()) {
      out += "x" + std::to_string(c.generator);
      return;
    }
    append_tokens(c.left, out);
    out += ",";
    const BasicCommutator& r = elements_[c.right];
    if (r.is_generator())
      out += "x" + std::to_string(r.generator);
    else
      out += render(c.right);
  }

  int generators_;
  int max_length_;
  std::vector<BasicCommutator> elements_;
  std::vector<int> stratum_begin_;
  std::unordered_map<std::uint64_t, int> pair_rank_;
};

}  // namespace nilmult
