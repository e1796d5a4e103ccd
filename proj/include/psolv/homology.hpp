#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "psolv/exec.hpp"
#include "psolv/finquot.hpp"
#include "psolv/fp_matrix.hpp"

namespace psolv {

// Largest group order accepted by the bar complex computations.
inline constexpr std::size_t kHomologyCap = 32;

// Degrees 1..3 of the normalized inhomogeneous bar complex with trivial F_p
// coefficients.  C_k has one basis vector per k-tuple of non-identity
// elements, in lexicographic order.  d_1 is zero for trivial coefficients.
struct BarSlice {
  std::uint32_t  p;
  std::size_t    order;
  SparseFpMatrix d1;  // C_1 -> C_0
  SparseFpMatrix d2;  // C_2 -> C_1
  SparseFpMatrix d3;  // C_3 -> C_2
};

// Builds the slice and checks d_2 d_3 = 0.
BarSlice bar_slice(FiniteGroup const& g, std::uint32_t p, std::size_t cap = kHomologyCap,
                   Exec exec = Exec::parallel);

std::size_t bar_h1(FiniteGroup const& g, std::uint32_t p, std::size_t cap = kHomologyCap);
std::size_t bar_h2(FiniteGroup const& g, std::uint32_t p, std::size_t cap = kHomologyCap);

// H_1 and H_2 with chosen bases, so that classes of arbitrary cycles have
// coordinates and homomorphisms induce matrices.
class BarHomology {
 public:
  BarHomology(FiniteGroup g, std::uint32_t p, std::size_t cap = kHomologyCap,
              Exec exec = Exec::parallel);

  FiniteGroup const& group() const noexcept { return group_; }
  std::uint32_t p() const noexcept { return p_; }
  std::size_t h1() const noexcept { return h1_reps_.size(); }
  std::size_t h2() const noexcept { return h2_reps_.size(); }

  // Index of [a | b] in C_2; a, b non-identity.
  std::size_t c2_index(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::size_t>(a - 1) * (group_.order() - 1) + (b - 1);
  }

  // Basis of H_1 as non-identity elements [a].
  std::vector<std::uint32_t> const& h1_representatives() const noexcept { return h1_reps_; }
  // Basis of H_2 as cycles in C_2.
  std::vector<std::vector<Residue>> const& h2_representatives() const noexcept {
    return h2_reps_;
  }

  std::vector<Residue> h1_coordinates(std::span<Residue const> chain) const;
  // Throws InvalidInput if `cycle` is not a cycle.
  std::vector<Residue> h2_coordinates(std::span<Residue const> cycle) const;

 private:
  FiniteGroup                       group_;
  std::uint32_t                     p_;
  std::vector<std::uint32_t>        h1_reps_;
  std::vector<std::vector<Residue>> h2_reps_;
  EchelonBasis                      h1_basis_;  // im d_2, then tagged units
  EchelonBasis                      h2_basis_;  // im d_3, then tagged cycles
  std::vector<long>                 h1_tag_;    // tag -> basis index or -1
  std::vector<long>                 h2_tag_;
  FpMatrix                          d2_;
};

// A homomorphism given on elements: image[x] in the target, image[0] = 0.
// Throws InvalidInput with a witness pair if it is not multiplicative.
void check_homomorphism(FiniteGroup const& source, FiniteGroup const& target,
                        std::vector<std::uint32_t> const& image);

// Matrices of induced maps, rows indexed by the source basis.
FpMatrix induced_h1(BarHomology const& source, BarHomology const& target,
                    std::vector<std::uint32_t> const& image);
FpMatrix induced_h2(BarHomology const& source, BarHomology const& target,
                    std::vector<std::uint32_t> const& image);

struct InclusionImage {
  FpMatrix   matrix;  // H_2(N) -> H_2(Q)
  FpSubspace image;   // in coordinates of H_2(Q)
};

// H_2(N; F_p) -> H_2(Q; F_p) for a subgroup N of Q.  Throws InvalidInput with
// a witness if N is not a subgroup.
InclusionImage induced_h2_inclusion(BarHomology const& q, Subset const& n);

enum class FiltrationKind { dwyer_kernel, derived_image, derived_kernel };

struct H2Filtration {
  FiltrationKind kind;
  std::size_t    m;
  std::size_t    ambient;    // dim H_2(Q)
  FpSubspace     subspace;   // in coordinates of H_2(Q)
};

// Kernel of H_2(Q) -> H_2(Q / Q_{p,m}).
H2Filtration dwyer_kernel(BarHomology const& q, std::size_t m);
// Image of H_2(Q^(m)) -> H_2(Q).
H2Filtration derived_image_filtration(BarHomology const& q, std::size_t m);
// Kernel of H_2(Q) -> H_2(Q / Q^(m)), the filtration that does not give a
// Dwyer-type theorem for the derived series.  Exposed for comparison.
H2Filtration derived_kernel_filtration(BarHomology const& q, std::size_t m);

nlohmann::json to_json(H2Filtration const& f);
// {"group_order", "p", "h1", "h2", "filtration": {...}}
nlohmann::json homology_report(BarHomology const& q, H2Filtration const* filtration);

// ---- finite-group check of the Dwyer-type theorems ---------------------------

// For a homomorphism A -> B of finite p-groups: whether it meets the
// hypothesis (H_1 iso, or mono when `mono`; H_2(A) -> H_2(B)/Phi onto, with
// Phi = Phi_{p,m} for the lower central kind and Phi^(m) for the derived
// kind) and, for n = 1..m+1, whether A/A_n -> B/B_n is an isomorphism
// (monomorphism).
struct DwyerCheck {
  bool              h1_ok;
  bool              h2_ok;
  bool              hypothesis() const noexcept { return h1_ok && h2_ok; }
  std::vector<bool> conclusion;  // index n-1
  bool              holds() const;
};

DwyerCheck finite_dwyer_check(BarHomology const& a, BarHomology const& b,
                              std::vector<std::uint32_t> const& image, std::size_t m,
                              SeriesKind kind, bool mono = false);

// Whether A/A_n -> B/B_n is injective and surjective, by preimages and
// coset images.
std::pair<bool, bool> finite_level_map(FiniteGroup const& a, FiniteGroup const& b,
                                       std::vector<std::uint32_t> const& image,
                                       std::uint32_t p, std::size_t n, SeriesKind kind);

}  // namespace psolv
