#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nilmult/errors.hpp"
#include "nilmult/freelie.hpp"
#include "nilmult/subspace.hpp"

namespace nilmult {

/// Finite-dimensional nilpotent Lie algebra over Q, given by structure
/// constants on a fixed basis e_1..e_n. Construction validates the Jacobi
/// identity on all basis triples and that the lower central series reaches
/// zero; anti-symmetry is built into the storage (only i < j is kept).
class NilpotentAlgebra {
 public:
  using SparseVec = std::map<int, Rational>;           // 1-based index -> coeff
  using Table = std::map<std::pair<int, int>, SparseVec>;  // (i,j), i < j

  static NilpotentAlgebra from_structure_constants(
      int dim, Table table, std::optional<std::string> name = std::nullopt) {
    return NilpotentAlgebra(dim, std::move(table), std::move(name));
  }

  int dim() const { return n_; }
  const std::optional<std::string>& name() const { return name_; }
  void set_name(std::optional<std::string> name) { name_ = std::move(name); }
  const Table& structure_constants() const { return table_; }

  bool is_abelian() const { return derived_dim() == 0; }
  int nilpotency_class() const { return class_; }
  int derived_dim() const { return lcs_dims_.size() > 1 ? lcs_dims_[1] : 0; }

  /// Dimensions of L^1 >= L^2 >= ..., including the final zero term.
  const std::vector<int>& lower_central_dims() const { return lcs_dims_; }

  /// The subspace L^i (1-based); zero subspace past the class.
  const Subspace& lower_central(int i) const {
    if (i < 1) throw std::invalid_argument("lower_central: index must be >= 1");
    std::size_t idx = std::min<std::size_t>(i - 1, lcs_.size() - 1);
    return lcs_[idx];
  }

  const Subspace& derived_subalgebra() const { return lower_central(2); }
  const Subspace& center() const { return center_; }
  int center_dim() const { return center_.dim(); }

  /// [e_i, e_j] as a sparse vector, any i, j (anti-symmetry applied).
  SparseVec bracket_basis(int i, int j) const {
    if (i < 1 || i > n_ || j < 1 || j > n_)
      throw std::invalid_argument("bracket_basis: index out of range");
    if (i == j) return {};
    bool flip = i > j;
    auto it = table_.find(flip ? std::make_pair(j, i) : std::make_pair(i, j));
    if (it == table_.end()) return {};
    SparseVec v = it->second;
    if (flip)
      for (auto& [k, c] : v) c = -c;
    return v;
  }

  /// [v, e_j] for a dense coordinate vector v.
  Vec bracket_with_basis(const Vec& v, int j) const {
    check_width(v);
    Vec out(n_);
    for (int i = 1; i <= n_; ++i) {
      if (sgn(v[i - 1]) == 0 || i == j) continue;
      for (const auto& [k, c] : bracket_basis(i, j)) out[k - 1] += v[i - 1] * c;
    }
    return out;
  }

  Vec bracket(const Vec& u, const Vec& v) const {
    check_width(u);
    check_width(v);
    Vec out(n_);
    for (const auto& [pair, col] : table_) {
      auto [i, j] = pair;
      Rational c = u[i - 1] * v[j - 1] - u[j - 1] * v[i - 1];
      if (sgn(c) == 0) continue;
      for (const auto& [k, ck] : col) out[k - 1] += c * ck;
    }
    return out;
  }

  /// Second center Z_2(L) = {v : [v, L] in Z(L)}.
  Subspace second_center() const {
    std::vector<Vec> constraints;
    for (int j = 1; j <= n_; ++j) {
      // residuals of ad(e_j) columns modulo the center
      std::vector<Vec> residual(n_);
      for (int i = 1; i <= n_; ++i) {
        Vec col(n_);
        for (const auto& [k, c] : bracket_basis(i, j)) col[k - 1] = c;
        residual[i - 1] = center_.reduce(std::move(col));
      }
      for (int t = 0; t < n_; ++t) {
        Vec row(n_);
        bool nonzero = false;
        for (int i = 0; i < n_; ++i) {
          row[i] = residual[i][t];
          nonzero = nonzero || sgn(row[i]) != 0;
        }
        if (nonzero) constraints.push_back(std::move(row));
      }
    }
    return nullspace(constraints, n_);
  }

 private:
  NilpotentAlgebra(int dim, Table table, std::optional<std::string> name)
      : n_(dim), name_(std::move(name)), table_(std::move(table)) {
    if (n_ < 0) throw std::invalid_argument("algebra dimension must be >= 0");
    validate_table();
    validate_jacobi();
    compute_series();
    compute_center();
  }

  void check_width(const Vec& v) const {
    if ((int)v.size() != n_)
      throw DimensionMismatch("NilpotentAlgebra: vector has wrong dimension");
  }

  void validate_table() {
    for (auto it = table_.begin(); it != table_.end();) {
      auto [i, j] = it->first;
      if (i < 1 || j <= i || j > n_)
        throw std::invalid_argument("structure constants: bad index pair (" +
                                    std::to_string(i) + "," + std::to_string(j) + ")");
      for (auto kt = it->second.begin(); kt != it->second.end();) {
        if (kt->first < 1 || kt->first > n_)
          throw std::invalid_argument("structure constants: target index out of range");
        if (sgn(kt->second) == 0)
          kt = it->second.erase(kt);
        else
          ++kt;
      }
      if (it->second.empty())
        it = table_.erase(it);
      else
        ++it;
    }
  }

  void validate_jacobi() const {
    for (int i = 1; i <= n_; ++i)
      for (int j = i + 1; j <= n_; ++j)
        for (int k = j + 1; k <= n_; ++k) {
          SparseVec total;
          auto add_term = [&](const SparseVec& inner, int outer, int sign) {
            for (const auto& [t, c] : inner)
              for (const auto& [s, cs] : bracket_basis(t, outer)) {
                total[s] += sign * c * cs;
                if (sgn(total[s]) == 0) total.erase(s);
              }
          };
          add_term(bracket_basis(i, j), k, 1);   // [[i,j],k]
          add_term(bracket_basis(j, k), i, 1);   // [[j,k],i]
          add_term(bracket_basis(i, k), j, -1);  // [[k,i],j]
          if (!total.empty()) throw JacobiViolation(i, j, k);
        }
  }

  void compute_series() {
    Subspace whole(n_);
    for (int i = 0; i < n_; ++i) {
      Vec e(n_);
      e[i] = 1;
      whole.insert(std::move(e));
    }
    lcs_.push_back(std::move(whole));
    lcs_dims_.push_back(n_);
    while (lcs_.back().dim() > 0) {
      const Subspace& prev = lcs_.back();
      Subspace next(n_);
      for (const Vec& row : prev.rows())
        for (int j = 1; j <= n_; ++j) next.insert(bracket_with_basis(row, j));
      if (next.dim() == prev.dim())
        throw NotNilpotent("lower central series stabilizes at dimension " +
                           std::to_string(next.dim()));
      lcs_dims_.push_back(next.dim());
      lcs_.push_back(std::move(next));
    }
    class_ = (int)lcs_.size() - 1;  // number of nonzero terms
  }

  void compute_center() {
    std::vector<Vec> constraints;
    for (int j = 1; j <= n_; ++j)
      for (int t = 1; t <= n_; ++t) {
        Vec row(n_);
        bool nonzero = false;
        for (int i = 1; i <= n_; ++i) {
          for (const auto& [k, c] : bracket_basis(i, j))
            if (k == t) {
              row[i - 1] = c;
              nonzero = true;
            }
        }
        if (nonzero) constraints.push_back(std::move(row));
      }
    center_ = nullspace(constraints, n_);
  }

  int n_;
  std::optional<std::string> name_;
  Table table_;
  std::vector<Subspace> lcs_;
  std::vector<int> lcs_dims_;
  int class_ = 0;
  Subspace center_{0};
};

struct SeriesInfo {
  std::vector<int> lower_central_dims;  // ends with the 0 term
  int center_dim = 0;
  int derived_dim = 0;
  int nilpotency_class = 0;
};

inline SeriesInfo series(const NilpotentAlgebra& l) {
  return {l.lower_central_dims(), l.center_dim(), l.derived_dim(),
          l.nilpotency_class()};
}

inline NilpotentAlgebra direct_sum(const NilpotentAlgebra& a,
                                   const NilpotentAlgebra& b) {
  NilpotentAlgebra::Table table = a.structure_constants();
  int off = a.dim();
  for (const auto& [pair, col] : b.structure_constants()) {
    NilpotentAlgebra::SparseVec shifted;
    for (const auto& [k, c] : col) shifted[k + off] = c;
    table[{pair.first + off, pair.second + off}] = std::move(shifted);
  }
  std::optional<std::string> name;
  if (a.name() && b.name()) name = *a.name() + "+" + *b.name();
  return NilpotentAlgebra::from_structure_constants(a.dim() + b.dim(),
                                                    std::move(table), name);
}

/// Quotient of L by the line spanned by b, which must be central; with
/// require_in_derived (the situation every bound argument needs) b must
/// also lie in L^2. The complement basis keeps every standard basis vector
/// except the pivot coordinate of b.
inline NilpotentAlgebra central_quotient(const NilpotentAlgebra& l, const Vec& b,
                                         bool require_in_derived = true) {
  if ((int)b.size() != l.dim())
    throw DimensionMismatch("central_quotient: vector has wrong dimension");
  if (is_zero_vec(b))
    throw std::invalid_argument("central_quotient: zero vector spans no line");
  if (!l.center().contains(b))
    throw std::invalid_argument("central_quotient: line is not central");
  if (require_in_derived && !l.derived_subalgebra().contains(b))
    throw std::invalid_argument("central_quotient: line is not inside L^2");

  Subspace line(l.dim());
  line.insert(b);
  int pivot = line.pivots()[0];

  std::vector<int> kept;  // 1-based surviving coordinates
  for (int i = 1; i <= l.dim(); ++i)
    if (i - 1 != pivot) kept.push_back(i);

  NilpotentAlgebra::Table table;
  for (std::size_t a = 0; a < kept.size(); ++a)
    for (std::size_t c = a + 1; c < kept.size(); ++c) {
      Vec w(l.dim());
      for (const auto& [k, ck] : l.bracket_basis(kept[a], kept[c]))
        w[k - 1] = ck;
      w = line.reduce(std::move(w));
      NilpotentAlgebra::SparseVec col;
      for (std::size_t t = 0; t < kept.size(); ++t)
        if (sgn(w[kept[t] - 1]) != 0) col[(int)t + 1] = w[kept[t] - 1];
      if (!col.empty()) table[{(int)a + 1, (int)c + 1}] = std::move(col);
    }
  return NilpotentAlgebra::from_structure_constants((int)kept.size(),
                                                    std::move(table));
}

/// L presented as F/R: a truncated free algebra, relator elements, the map
/// sending each free generator to a vector of the target, and the resulting
/// relator ideal. Construction verifies that the ideal has codimension
/// dim(L) and that the presentation map kills it, i.e. that the quotient of
/// the free algebra by the relators really is the target algebra up to the
/// truncation the multiplier computation uses.
class FreePresentation {
 public:
  FreePresentation(std::shared_ptr<TruncatedFreeAlgebra> algebra,
                   std::vector<FreeLieElement> relators,
                   std::vector<Vec> generator_images, NilpotentAlgebra target)
      : algebra_(std::move(algebra)),
        relators_(std::move(relators)),
        generator_images_(std::move(generator_images)),
        target_(std::move(target)),
        relator_ideal_(0) {
    if ((int)generator_images_.size() != algebra_->generators())
      throw DimensionMismatch("FreePresentation: one image per generator required");
    for (const Vec& img : generator_images_)
      if ((int)img.size() != target_.dim())
        throw DimensionMismatch("FreePresentation: generator image has wrong dimension");
    compute_hall_images();
    compute_relator_ideal();
    validate();
  }

  /// The full-basis presentation of L for the level-c multiplier: one free
  /// generator per basis vector, relators [x_i, x_j] - sum_k c_ij^k x_k,
  /// truncation class N = class + c. N = class + c is enough:
  /// [F^{class+1}, F, .., F] (c times) = F^{class+c+1}, so everything cut
  /// off by the truncation already lies in the denominator subspace
  /// [R, F, .., F], and no dimension information is lost.
  static FreePresentation full_basis(const NilpotentAlgebra& l, int c,
                                     std::size_t ceiling = HallBasis::kDefaultCeiling) {
    if (l.dim() == 0)
      throw std::invalid_argument("full_basis: zero algebra has no presentation");
    if (c < 1) throw std::invalid_argument("full_basis: level must be >= 1");
    int truncation = l.nilpotency_class() + c;
    auto algebra = std::make_shared<TruncatedFreeAlgebra>(l.dim(), truncation, ceiling);
    std::vector<FreeLieElement> relators;
    for (int i = 1; i <= l.dim(); ++i)
      for (int j = i + 1; j <= l.dim(); ++j) {
        FreeLieElement r = algebra->bracket(algebra->generator(i), algebra->generator(j));
        for (const auto& [k, c_ijk] : l.bracket_basis(i, j))
          r -= c_ijk * algebra->generator(k);
        relators.push_back(std::move(r));
      }
    std::vector<Vec> images;
    for (int i = 1; i <= l.dim(); ++i) {
      Vec e(l.dim());
      e[i - 1] = 1;
      images.push_back(std::move(e));
    }
    return FreePresentation(std::move(algebra), std::move(relators),
                            std::move(images), l);
  }

  const TruncatedFreeAlgebra& algebra() const { return *algebra_; }
  std::shared_ptr<TruncatedFreeAlgebra> algebra_ptr() const { return algebra_; }
  const std::vector<FreeLieElement>& relators() const { return relators_; }
  const NilpotentAlgebra& target() const { return target_; }
  const Subspace& relator_ideal() const { return relator_ideal_; }

  /// Image in the target of each Hall basis element under the presentation
  /// map (generators go to their declared images, brackets evaluate in the
  /// target).
  const std::vector<Vec>& hall_images() const { return hall_images_; }

  Vec image_of(const Vec& dense) const {
    Vec out(target_.dim());
    for (int rank = 0; rank < (int)dense.size(); ++rank) {
      if (sgn(dense[rank]) == 0) continue;
      for (int t = 0; t < target_.dim(); ++t)
        out[t] += dense[rank] * hall_images_[rank][t];
    }
    return out;
  }

 private:
  void compute_hall_images() {
    const HallBasis& basis = algebra_->basis();
    hall_images_.resize(basis.size());
    for (int rank = 0; rank < basis.size(); ++rank) {
      const BasicCommutator& c = basis.at(rank);
      if (c.is_generator())
        hall_images_[rank] = generator_images_[c.generator - 1];
      else
        hall_images_[rank] =
            target_.bracket(hall_images_[c.left], hall_images_[c.right]);
    }
  }

  void compute_relator_ideal() {
    std::vector<Vec> seeds;
    for (const FreeLieElement& r : relators_) seeds.push_back(algebra_->to_dense(r));
    relator_ideal_ = ideal_closure(*algebra_, seeds);
  }

  void validate() const {
    int expected = algebra_->dim() - target_.dim();
    if (relator_ideal_.dim() != expected)
      throw ValidationError(
          "FreePresentation: relator ideal has codimension " +
          std::to_string(algebra_->dim() - relator_ideal_.dim()) +
          ", expected " + std::to_string(target_.dim()));
    for (const Vec& row : relator_ideal_.rows())
      if (!is_zero_vec(image_of(row)))
        throw ValidationError("FreePresentation: relator ideal does not map to zero");
    Subspace image_span(target_.dim());
    for (const Vec& img : hall_images_) image_span.insert(img);
    if (image_span.dim() != target_.dim())
      throw ValidationError("FreePresentation: presentation map is not surjective");
  }

 public:
  /// Smallest ideal of the truncated algebra containing the given vectors:
  /// close the span under bracketing with the generators (the Jacobi
  /// identity reduces bracketing with arbitrary elements to iterated
  /// generator brackets). Each round only brackets the directions the
  /// previous round added; the minimal degree of new vectors rises every
  /// round, so at most max_length rounds are needed.
  static Subspace ideal_closure(const TruncatedFreeAlgebra& algebra,
                                const std::vector<Vec>& seeds) {
    Subspace closed(algebra.dim());
    std::vector<Vec> frontier;
    auto keep_new_row = [&](int pivot) {
      if (pivot >= 0)
        frontier.push_back(closed.rows()[closed.row_index_of_pivot(pivot)]);
    };
    for (const Vec& v : seeds) keep_new_row(closed.insert_pivot(v));
    for (int round = 0; round < algebra.max_length() && !frontier.empty(); ++round) {
      std::vector<Vec> current = std::move(frontier);
      frontier.clear();
      for (const Vec& v : current)
        for (int g = 1; g <= algebra.generators(); ++g)
          keep_new_row(closed.insert_pivot(
              bracket_dense_basis(algebra, v, algebra.basis().generator_rank(g))));
    }
    return closed;
  }

  /// [v, h_rank] for a dense coordinate vector of the truncated algebra.
  static Vec bracket_dense_basis(const TruncatedFreeAlgebra& algebra, const Vec& v,
                                 int rank) {
    Vec out(algebra.dim());
    int other_len = algebra.basis().at(rank).length;
    for (int i = 0; i < (int)v.size(); ++i) {
      if (sgn(v[i]) == 0) continue;
      if (algebra.basis().at(i).length + other_len > algebra.max_length()) break;
      if (i == rank) continue;
      FreeLieElement e = algebra.bracket_basis(i, rank);
      for (const auto& [r, c] : e.coefficients()) out[r] += v[i] * c;
    }
    return out;
  }

 private:
  std::shared_ptr<TruncatedFreeAlgebra> algebra_;
  std::vector<FreeLieElement> relators_;
  std::vector<Vec> generator_images_;
  NilpotentAlgebra target_;
  Subspace relator_ideal_;
  std::vector<Vec> hall_images_;
};

}  // namespace nilmult
