#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "psolv/finquot.hpp"
#include "psolv/fp_matrix.hpp"

namespace psolv {

// F_p[Gamma] for a finite group Gamma; elements are coefficient vectors
// indexed by Gamma's elements.
class GroupRing {
 public:
  using Element = std::vector<Residue>;

  GroupRing(FiniteGroup gamma, std::uint32_t p);

  FiniteGroup const& gamma() const noexcept { return gamma_; }
  PrimeField const& field() const noexcept { return field_; }
  std::uint32_t p() const noexcept { return field_.p(); }
  std::size_t order() const noexcept { return gamma_.order(); }
  // Gamma's order is a power of p.
  bool is_p_group() const noexcept;

  Element zero() const { return Element(order(), 0); }
  Element one() const { return basis(0); }
  Element basis(std::uint32_t g) const;
  Element add(Element const& a, Element const& b) const;
  Element sub(Element const& a, Element const& b) const;
  Element mul(Element const& a, Element const& b) const;
  Residue augment(Element const& a) const;
  bool is_zero(Element const& a) const;

 private:
  FiniteGroup gamma_;
  PrimeField  field_;
};

// Matrix over the group ring, acting on columns of ring elements from the
// left, so that it is a map of free right modules R^cols -> R^rows.
struct RingMatrix {
  std::size_t                         rows = 0;
  std::size_t                         cols = 0;
  std::vector<GroupRing::Element>     entries;  // row-major

  GroupRing::Element const& at(std::size_t i, std::size_t j) const {
    return entries[i * cols + j];
  }
  GroupRing::Element& at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
};

RingMatrix zero_matrix(GroupRing const& r, std::size_t rows, std::size_t cols);
RingMatrix identity_matrix(GroupRing const& r, std::size_t n);
RingMatrix multiply(GroupRing const& r, RingMatrix const& a, RingMatrix const& b);
bool is_zero(GroupRing const& r, RingMatrix const& m);

// Regular representation: entry (i, j) becomes a |Gamma| x |Gamma| block, with
// basis vector (j, h) sent to sum_g a_ij[g] (i, g h).
FpMatrix flatten(GroupRing const& r, RingMatrix const& m);
// Entrywise augmentation.
FpMatrix augment(GroupRing const& r, RingMatrix const& m);

// Free chain complex D_Q -> ... -> D_0 over F_p[Gamma].  boundaries[q - 1]
// is d_q : D_q -> D_{q-1}, of size ranks[q-1] x ranks[q].
class FpGammaComplex {
 public:
  // Checks sizes and d_q d_{q+1} = 0 over the ring.
  FpGammaComplex(GroupRing ring, std::vector<std::size_t> ranks,
                 std::vector<RingMatrix> boundaries);

  GroupRing const& ring() const noexcept { return ring_; }
  std::vector<std::size_t> const& ranks() const noexcept { return ranks_; }
  std::vector<RingMatrix> const& boundaries() const noexcept { return boundaries_; }
  std::size_t top_degree() const noexcept { return ranks_.empty() ? 0 : ranks_.size() - 1; }

 private:
  GroupRing                ring_;
  std::vector<std::size_t> ranks_;
  std::vector<RingMatrix>  boundaries_;
};

// Complex of plain F_p matrices: ranks and d_q as above.
struct PlainComplex {
  std::uint32_t            p;
  std::vector<std::size_t> ranks;
  std::vector<FpMatrix>    boundaries;
};

PlainComplex flatten(FpGammaComplex const& d);
PlainComplex augment(FpGammaComplex const& d);
std::vector<std::size_t> homology_dims(PlainComplex const& c);
std::vector<std::size_t> homology_dims(FpGammaComplex const& d);

// Adds free generators in degree q + 1 whose boundaries are the given
// degree-q cycles (columns of ring elements).  Throws if one is not a cycle.
FpGammaComplex attach_cells(FpGammaComplex const& d, std::size_t q,
                            std::vector<std::vector<GroupRing::Element>> const& cycles);

// ---- verifiers ------------------------------------------------------------------

struct RankInequalityRow {
  std::size_t q;
  std::size_t lhs;  // dim H_q(D)
  std::size_t rhs;  // |Gamma| dim H_q(D (x) F_p)
  bool pass() const noexcept { return lhs <= rhs; }
};

// Throws InvalidInput unless Gamma is a p-group.
std::vector<RankInequalityRow> rank_inequality_check(FpGammaComplex const& d);

enum class StrebelVerdict {
  implication_holds,     // augmented injective and injective
  hypothesis_not_met,    // augmented map not injective: nothing claimed
  fails_not_p_group,     // expected failure: Gamma is not a p-group
  fails,                 // contradiction on a p-group
};
std::string to_string(StrebelVerdict v);

struct StrebelReport {
  bool augmented_injective;
  bool injective;
  StrebelVerdict verdict;
  // Nonzero kernel element, leading coefficient 1, when not injective.
  std::optional<std::vector<GroupRing::Element>> witness;
};

StrebelReport strebel_check(GroupRing const& r, RingMatrix const& f);

struct MapRankReport {
  std::size_t lhs;  // rank of the flattened map
  std::size_t rhs;  // |Gamma| rank of the augmented map
  bool pass() const noexcept { return lhs >= rhs; }
};

// Throws InvalidInput unless Gamma is a p-group.
MapRankReport map_rank_check(GroupRing const& r, RingMatrix const& f);

struct AcyclicLiftReport {
  std::size_t              m;
  std::vector<std::size_t> dims;            // H_i(D), i = 0..m
  std::vector<std::size_t> augmented_dims;  // H_i(D (x) F_p)
  bool hypothesis;  // augmented complex acyclic through degree m
  bool conclusion;  // D acyclic through degree m
  bool pass() const noexcept { return !hypothesis || conclusion; }
};

// Throws InvalidInput unless Gamma is a p-group.
AcyclicLiftReport acyclic_lift_check(FpGammaComplex const& d, std::size_t m);

// ---- random instances ---------------------------------------------------------------

GroupRing::Element random_element(GroupRing const& r, std::mt19937_64& rng);
RingMatrix random_matrix(GroupRing const& r, std::size_t rows, std::size_t cols,
                         std::mt19937_64& rng);
// Product of random elementary matrices I + r E_ij and its inverse.
std::pair<RingMatrix, RingMatrix> random_invertible(GroupRing const& r, std::size_t n,
                                                    std::mt19937_64& rng);
// Direct sum of random pieces (free modules with zero differential, single
// maps, composable pairs A, B with A B = 0, cones of isomorphisms) in
// degrees 0..top, followed by a random change of basis in every degree.
FpGammaComplex random_complex(GroupRing const& r, std::size_t top, std::mt19937_64& rng);
// Same construction using only cones of isomorphisms, hence acyclic.
FpGammaComplex random_acyclic_complex(GroupRing const& r, std::size_t top,
                                      std::mt19937_64& rng);

// ---- JSON -------------------------------------------------------------------------

nlohmann::json to_json(FpGammaComplex const& d);
FpGammaComplex complex_from_json(nlohmann::json const& j);
// {"p", "gamma_order", "gamma_table", "rows", "cols", "entries": [[i, j, [coefs]]]}
nlohmann::json to_json(GroupRing const& r, RingMatrix const& m);
std::pair<GroupRing, RingMatrix> ring_matrix_from_json(nlohmann::json const& j);

}  // namespace psolv
