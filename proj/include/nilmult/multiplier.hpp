#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nilmult/algebra.hpp"
#include "nilmult/errors.hpp"
#include "nilmult/freelie.hpp"
#include "nilmult/subspace.hpp"

namespace nilmult {

/// The c-nilpotent multiplier of L = F/R is (R cap F^{c+1}) / [R, F, .., F]
/// with c bracketings. Everything is computed inside the truncation
/// F/F^{N+1}, N = class + c, which loses nothing: the cut-off tail
/// F^{class+c+1} = [F^{class+1}, F, .., F] sits inside both subspaces.
///
/// The numerator falls out of the echelon form of the relator ideal: ranks
/// are ordered length-first, so echelonizing with the natural coordinate
/// priority pivots short lengths first and the rows pivoted at length
/// >= c+1 are exactly R cap F^{c+1}.
class MultiplierComputation {
 public:
  MultiplierComputation(const FreePresentation& presentation, int c)
      : c_(c),
        relator_ideal_(presentation.relator_ideal()),
        bracket_subspace_(0),
        tail_part_(0) {
    if (c < 1) throw std::invalid_argument("multiplier level must be >= 1");
    const TruncatedFreeAlgebra& algebra = presentation.algebra();
    if (algebra.max_length() < presentation.target().nilpotency_class() + c)
      throw std::invalid_argument(
          "presentation truncation too small for this multiplier level");

    bracket_subspace_ = relator_ideal_;
    for (int step = 0; step < c_; ++step)
      bracket_subspace_ = bracket_step(algebra, bracket_subspace_);

    tail_part_ = coordinate_tail_intersection(
        relator_ideal_, algebra.basis().first_rank_of_length(c + 1));

    dimension_ = tail_part_.dim() - bracket_subspace_.dim();
    if (dimension_ < 0)
      throw ValidationError("multiplier: [R,F,..,F] escapes R cap F^{c+1}");
  }

  int level() const { return c_; }
  const Subspace& relator_ideal() const { return relator_ideal_; }
  const Subspace& bracket_subspace() const { return bracket_subspace_; }
  const Subspace& tail_part() const { return tail_part_; }
  long dimension() const { return dimension_; }

  /// One step W -> [W, F]: bracket every basis row with every Hall basis
  /// element (bilinearity reduces F to its basis).
  static Subspace bracket_step(const TruncatedFreeAlgebra& algebra,
                               const Subspace& w) {
    Subspace out(algebra.dim());
    for (const Vec& row : w.rows()) {
      int min_len = min_length(algebra, row);
      if (min_len < 0) continue;
      for (int rank = 0; rank < algebra.dim(); ++rank) {
        if (algebra.basis().at(rank).length + min_len > algebra.max_length())
          break;  // ranks are length-sorted
        out.insert(FreePresentation::bracket_dense_basis(algebra, row, rank));
      }
    }
    return out;
  }

 private:
  static int min_length(const TruncatedFreeAlgebra& algebra, const Vec& row) {
    for (int i = 0; i < (int)row.size(); ++i)
      if (sgn(row[i]) != 0) return algebra.basis().at(i).length;
    return -1;
  }

  int c_;
  Subspace relator_ideal_;
  Subspace bracket_subspace_;
  Subspace tail_part_;
  long dimension_ = 0;
};

inline long multiplier_dim(const FreePresentation& presentation, int c) {
  return MultiplierComputation(presentation, c).dimension();
}

inline long multiplier_dim(const NilpotentAlgebra& l, int c,
                           std::size_t ceiling = HallBasis::kDefaultCeiling) {
  if (l.dim() == 0) return 0;
  return multiplier_dim(FreePresentation::full_basis(l, c, ceiling), c);
}

/// s2(L) = n(n-1)(n-2)/3 + 3 - dim M^(2)(L), defined for non-abelian L.
inline long s2_from_dim(int n, long dim_multiplier) {
  return (long)n * (n - 1) * (n - 2) / 3 + 3 - dim_multiplier;
}

inline long s2(const NilpotentAlgebra& l,
               std::size_t ceiling = HallBasis::kDefaultCeiling) {
  if (l.is_abelian())
    throw std::invalid_argument("s2 is defined for non-abelian algebras only");
  return s2_from_dim(l.dim(), multiplier_dim(l, 2, ceiling));
}

struct BoundReport {
  long general_bound = 0;  // (n-m)((n+2m-2)(n-m-1)+3(m-1))/3 + 3
  long slack = 0;          // general_bound - dim M^(2), never negative
  std::optional<long> lemma_m2;      // n(n-2)(n-1)/3 + 1 when m = 2
  std::optional<long> lemma_m3;      // n(n-2)(n-1)/3 - 2 when m >= 3
  std::optional<long> corollary_m2;  // n(n-2)(n-1)/3 - 2 when m >= 2
};

inline BoundReport bound_check_from_dim(int n, int m, long dim_multiplier) {
  if (m < 1)
    throw std::invalid_argument("bound_check is defined for non-abelian algebras only");
  BoundReport r;
  long inner = (long)(n + 2 * m - 2) * (n - m - 1) + 3 * (m - 1);
  r.general_bound = (long)(n - m) * inner / 3 + 3;
  r.slack = r.general_bound - dim_multiplier;
  long base = (long)n * (n - 2) * (n - 1) / 3;
  if (m == 2) r.lemma_m2 = base + 1;
  if (m >= 3) r.lemma_m3 = base - 2;
  if (m >= 2) r.corollary_m2 = base - 2;
  if (r.slack < 0 || (r.lemma_m2 && dim_multiplier > *r.lemma_m2) ||
      (r.lemma_m3 && dim_multiplier > *r.lemma_m3) ||
      (r.corollary_m2 && dim_multiplier > *r.corollary_m2))
    throw ImpossibleValue("multiplier dimension " + std::to_string(dim_multiplier) +
                          " exceeds a proven bound at n=" + std::to_string(n) +
                          ", m=" + std::to_string(m));
  return r;
}

inline BoundReport bound_check(const NilpotentAlgebra& l,
                               std::size_t ceiling = HallBasis::kDefaultCeiling) {
  return bound_check_from_dim(l.dim(), l.derived_dim(),
                              multiplier_dim(l, 2, ceiling));
}

/// Classification by s2: only 0, 3, 5, 6 and values >= 7 can occur; seeing
/// 1, 2 or 4 contradicts the classification and must abort loudly.
inline std::string classify_s2(long s2_value) {
  switch (s2_value) {
    case 0: return "H(1)⊕A(n−3)";
    case 3: return "H(k)⊕A(n−2k−1), k ≥ 2";
    case 5: return "L4_3 or L5_8";
    case 6: return "L5_5";
    case 1:
    case 2:
    case 4:
      throw ImpossibleValue("s2 = " + std::to_string(s2_value) +
                            " is impossible for a nilpotent Lie algebra");
    default:
      if (s2_value < 0)
        throw ImpossibleValue("negative s2 = " + std::to_string(s2_value));
      return "beyond classification table";
  }
}

inline std::string classify(const NilpotentAlgebra& l,
                            std::size_t ceiling = HallBasis::kDefaultCeiling) {
  return classify_s2(s2(l, ceiling));
}

struct CapabilityResult {
  bool capable = false;
  std::optional<Vec> witness;  // nonzero image of Z_2 of the cover in L
};

/// Decides 2-capability through the 2-cover E = F/[R,F,F]: L is 2-capable
/// exactly when Z_2(E) maps to zero in L. E is finite dimensional since
/// [R,F,F] contains F^{class+3}, so the class+2 truncation captures it
/// whole; its basis is the set of Hall coordinates not pivoted in W_2, and
/// brackets are computed in the free algebra and reduced mod W_2.
inline CapabilityResult two_capable(const FreePresentation& presentation,
                                    const MultiplierComputation& computation) {
  if (computation.level() != 2)
    throw std::invalid_argument("two_capable needs a level-2 computation");
  const TruncatedFreeAlgebra& algebra = presentation.algebra();
  const Subspace& w2 = computation.bracket_subspace();

  std::vector<int> complement;  // Hall ranks representing a basis of E
  {
    std::vector<bool> pivoted(algebra.dim(), false);
    for (int p : w2.pivots()) pivoted[p] = true;
    for (int rank = 0; rank < algebra.dim(); ++rank)
      if (!pivoted[rank]) complement.push_back(rank);
  }
  const int cover_dim = (int)complement.size();
  std::vector<int> cover_index(algebra.dim(), -1);
  for (int a = 0; a < cover_dim; ++a) cover_index[complement[a]] = a;

  NilpotentAlgebra::Table table;
  for (int a = 0; a < cover_dim; ++a)
    for (int b = a + 1; b < cover_dim; ++b) {
      FreeLieElement e = algebra.bracket_basis(complement[a], complement[b]);
      if (e.is_zero()) continue;
      Vec reduced = w2.reduce(algebra.to_dense(e));
      NilpotentAlgebra::SparseVec col;
      for (int rank = 0; rank < algebra.dim(); ++rank)
        if (sgn(reduced[rank]) != 0) col[cover_index[rank] + 1] = reduced[rank];
      if (!col.empty()) table[{a + 1, b + 1}] = std::move(col);
    }
  NilpotentAlgebra cover =
      NilpotentAlgebra::from_structure_constants(cover_dim, std::move(table));

  Subspace z2 = cover.second_center();
  for (const Vec& row : z2.rows()) {
    Vec lifted(algebra.dim());
    for (int a = 0; a < cover_dim; ++a) lifted[complement[a]] = row[a];
    Vec image = presentation.image_of(lifted);
    if (!is_zero_vec(image)) return {false, std::move(image)};
  }
  return {true, std::nullopt};
}

inline CapabilityResult two_capable(const NilpotentAlgebra& l,
                                    std::size_t ceiling = HallBasis::kDefaultCeiling) {
  if (l.dim() == 0) return {true, std::nullopt};
  FreePresentation presentation = FreePresentation::full_basis(l, 2, ceiling);
  MultiplierComputation computation(presentation, 2);
  return two_capable(presentation, computation);
}

/// Whether the map M^(2)(L) -> M^(2)(L/B) induced by adding a preimage of
/// the central line B to the relators is injective, decided exactly:
/// the kernel is ((R cap F^3) cap W_2') / W_2.
inline bool monomorphism_check(const NilpotentAlgebra& l, const Vec& b,
                               std::size_t ceiling = HallBasis::kDefaultCeiling) {
  if ((int)b.size() != l.dim())
    throw DimensionMismatch("monomorphism_check: vector has wrong dimension");
  if (is_zero_vec(b))
    throw std::invalid_argument("monomorphism_check: zero vector spans no line");
  if (!l.center().contains(b))
    throw std::invalid_argument("monomorphism_check: line is not central");
  if (!l.derived_subalgebra().contains(b))
    throw std::invalid_argument("monomorphism_check: line is not inside L^2");

  FreePresentation presentation = FreePresentation::full_basis(l, 2, ceiling);
  const TruncatedFreeAlgebra& algebra = presentation.algebra();
  MultiplierComputation computation(presentation, 2);

  std::vector<Vec> seeds;
  for (const FreeLieElement& r : presentation.relators())
    seeds.push_back(algebra.to_dense(r));
  Vec preimage(algebra.dim());
  for (int i = 1; i <= l.dim(); ++i)
    preimage[algebra.basis().generator_rank(i)] = b[i - 1];
  seeds.push_back(std::move(preimage));

  Subspace extended_ideal = FreePresentation::ideal_closure(algebra, seeds);
  Subspace w2_extended = MultiplierComputation::bracket_step(
      algebra, MultiplierComputation::bracket_step(algebra, extended_ideal));

  Subspace kernel = intersect(computation.tail_part(), w2_extended);
  return kernel.dim() == computation.bracket_subspace().dim();
}

/// Executable form of the quotient inequality the classification proofs
/// lean on: for a central line B inside L^2,
///   dim M^(2)(L/B) + dim(L/L^2 (x) L/L^2 (x) B) - dim(L^3 cap B)
///     - dim M^(2)(L) >= 0.
/// Returns the (nonnegative) difference.
inline long quotient_deficiency(const NilpotentAlgebra& l, const Vec& b,
                                std::size_t ceiling = HallBasis::kDefaultCeiling) {
  if ((int)b.size() != l.dim())
    throw DimensionMismatch("quotient_deficiency: vector has wrong dimension");
  if (is_zero_vec(b))
    throw std::invalid_argument("quotient_deficiency: zero vector spans no line");
  if (!l.center().contains(b))
    throw std::invalid_argument("quotient_deficiency: line is not central");
  if (!l.derived_subalgebra().contains(b))
    throw std::invalid_argument("quotient_deficiency: line is not inside L^2");

  long dim_l = multiplier_dim(l, 2, ceiling);
  NilpotentAlgebra quotient = central_quotient(l, b, true);
  long dim_q = multiplier_dim(quotient, 2, ceiling);
  long codim = l.dim() - l.derived_dim();
  long tensor = codim * codim;  // dim(L/L^2 (x) L/L^2 (x) B), B a line
  long cut = l.lower_central(3).contains(b) ? 1 : 0;
  long deficiency = dim_q + tensor - cut - dim_l;
  if (deficiency < 0)
    throw ImpossibleValue("quotient inequality violated: deficiency " +
                          std::to_string(deficiency));
  return deficiency;
}

}  // namespace nilmult
