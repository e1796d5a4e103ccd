#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "psolv/error.hpp"
#include "psolv/exec.hpp"
#include "psolv/finquot.hpp"
#include "psolv/fp_matrix.hpp"
#include "psolv/presentation.hpp"

namespace psolv {

struct SeriesOptions {
  // Largest quotient order that will be built.
  std::uint64_t max_order = std::uint64_t{1} << 20;
  Exec          exec      = Exec::parallel;
};

// Default options with max_order overridden by PSOLV_MAX_ORDER when set.
SeriesOptions options_from_env();

// ---- H_1 ------------------------------------------------------------------

struct H1ModP {
  std::size_t dim;
  // num_generators x dim; row i is the class of generator i.
  FpMatrix projection;
  // Generator whose class is each basis vector.
  std::vector<std::size_t> basis_generators;
  // Coordinates of an arbitrary word's class.
  std::vector<Residue> classify(Word const& w) const;
};

H1ModP h1_mod_p(Presentation const& g, std::uint32_t p);

// ---- stages ---------------------------------------------------------------

// The quotient G/G^(n) (derived kind) or G/G_{p,n} (lower central kind) as a
// regular permutation group.  Points are encoded as
//   previous point * p^d + (top layer vector in base p, coordinate 0 first)
// so point x of this stage lies over point x / p^d of the previous one.
struct SeriesStage {
  SeriesKind kind = SeriesKind::derived;
  std::uint32_t p = 2;
  std::size_t   n = 0;
  FiniteQuotient quotient = FiniteQuotient::regular({});
  // One entry per layer built; a trailing 0 marks stabilization.
  std::vector<std::size_t>   layer_dims;
  // Index of each successive term, i.e. order of the quotient after each
  // layer.
  std::vector<std::uint64_t> indices;
  bool stabilized = false;
  // Conjugation action of each ambient generator on the top (last nonzero)
  // layer, as right-acting matrices: v -> v M_g for x -> g^-1 x g.
  std::vector<FpMatrix> action;

  std::uint64_t order() const noexcept { return quotient.degree(); }
  // Number of layers the stage should have at level n.
  static std::size_t expected_layers(SeriesKind kind, std::size_t n) {
    return kind == SeriesKind::derived ? n : (n == 0 ? 0 : n - 1);
  }
};

// The next layer above a regular quotient Q = G/K: V = H_1(K; F_p) and the
// layer W (V itself for the derived kind, the G-coinvariants of V for the
// lower central kind), with everything needed to build G/K'.
struct Layer {
  std::size_t v_dim = 0;
  std::size_t w_dim = 0;
  // Conjugation matrices on V and on W, one per ambient generator.
  std::vector<FpMatrix> v_action;
  std::vector<FpMatrix> w_action;
  // shift[c * num_gens + g]: layer vector picked up along edge (c, g).
  std::vector<std::vector<Residue>> shift;
};

// dim H_1(K; F_p) for K the kernel of G -> Q, by a sparse rank only.
std::size_t kernel_h1_dim(Presentation const& g, FiniteQuotient const& q, std::uint32_t p,
                          Exec exec = Exec::parallel);

// Largest dim H_1(K; F_p) for which a full layer (dense conjugation matrices)
// is built.
inline constexpr std::size_t kDenseLayerCap = 4096;

Layer compute_layer(Presentation const& g, FiniteQuotient const& q, SeriesKind kind,
                    std::uint32_t p, Exec exec = Exec::parallel);

// Thrown when the next quotient would exceed max_order, or its layer would be
// too large to build.  Carries the last stage that was built and a layer
// dimension certifying the overflow (for the lower central kind often just
// the lower bound 1).
class SeriesExplosion : public CapExceeded {
 public:
  SeriesExplosion(std::string const& what, SeriesStage partial, std::size_t offending_dim)
      : CapExceeded(what), partial_(std::move(partial)), offending_dim_(offending_dim) {}
  SeriesStage const& partial() const noexcept { return partial_; }
  std::size_t level_reached() const noexcept { return partial_.n; }
  std::size_t offending_dim() const noexcept { return offending_dim_; }

 private:
  SeriesStage partial_;
  std::size_t offending_dim_;
};

// The trivial quotient: level 0 of the derived series, level 1 of the lower
// central one.
SeriesStage initial_stage(Presentation const& g, SeriesKind kind, std::uint32_t p);
// Builds the next level.  A stabilized stage is returned with n bumped and
// nothing else changed.
SeriesStage extend_stage(Presentation const& g, SeriesStage const& s,
                         SeriesOptions const& opts = {});

SeriesStage series_stage(Presentation const& g, std::uint32_t p, std::size_t n,
                         SeriesKind kind, SeriesOptions const& opts = {});
SeriesStage derived_stage(Presentation const& g, std::uint32_t p, std::size_t n,
                          SeriesOptions const& opts = {});
SeriesStage lower_central_p_stage(Presentation const& g, std::uint32_t p, std::size_t n,
                                  SeriesOptions const& opts = {});

// Builds derived levels until the series stabilizes.  For a finite p-group
// this is the group itself.
SeriesStage stabilized_derived_quotient(Presentation const& g, std::uint32_t p,
                                        SeriesOptions const& opts = {});

std::vector<FpMatrix> const& conjugation_action(SeriesStage const& s);

nlohmann::json to_json(SeriesStage const& s);

// ---- induced maps ---------------------------------------------------------

// Checks that every source relator maps to the identity of the target
// quotient; returns a description of the first failure.
std::optional<std::string> validate_map_at_level(GroupMap const& phi,
                                                 FiniteQuotient const& target);

struct LevelMap {
  SeriesStage source;
  SeriesStage target;
  InducedMap  flags;
  bool bijective() const noexcept { return flags.injective && flags.surjective; }
};

LevelMap induced_quotient_map(GroupMap const& phi, std::uint32_t p, std::size_t n,
                              SeriesKind kind, SeriesOptions const& opts = {});

struct H1Map {
  FpMatrix    matrix;  // dim H_1(A) x dim H_1(B), row vectors
  std::size_t rank;
  bool injective;
  bool surjective;
};

H1Map h1_map(GroupMap const& phi, std::uint32_t p);

enum class StallingsVerdict { consistent, hypothesis_not_met, conclusion_violated };
std::string to_string(StallingsVerdict v);

struct StallingsReport {
  std::uint32_t p;
  SeriesKind    kind;
  bool          assume_h2_epi;
  H1Map         h1;
  // "iso" when H_1 is bijective, "mono" when only injective, else "none".
  std::string   version;
  struct Level {
    std::size_t   n;
    bool          well_defined;
    bool          injective;
    bool          surjective;
    std::uint64_t source_order;
    std::uint64_t target_order;
  };
  std::vector<Level> levels;
  // Set when a level could not be built within caps.
  std::optional<std::string> truncated;
  StallingsVerdict verdict;
};

StallingsReport stallings_report(GroupMap const& phi, std::uint32_t p, std::size_t n_max,
                                 SeriesKind kind, bool assume_h2_epi = true,
                                 SeriesOptions const& opts = {});

nlohmann::json to_json(StallingsReport const& r);

struct IndependenceReport {
  bool          independent_in_h1;
  std::size_t   h1_rank;
  std::uint64_t subgroup_order;  // subgroup of B/B^(n) generated by the elements
  std::uint64_t free_order;      // |F/F^(n)| for F free on the elements
  bool          injective;       // free_order == subgroup_order
};

IndependenceReport independence_check(Presentation const& b, std::vector<Word> const& elements,
                                      std::uint32_t p, std::size_t n,
                                      SeriesOptions const& opts = {});

nlohmann::json to_json(IndependenceReport const& r);

// ---- growth -----------------------------------------------------------------

struct Ratio {
  std::uint64_t num = 0;
  std::uint64_t den = 1;
  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(Ratio const&, Ratio const&) = default;
};

Ratio make_ratio(std::uint64_t num, std::uint64_t den);

struct GrowthReport {
  struct Level {
    std::size_t   n;
    std::size_t   d;      // dim G^(n-1)/G^(n)
    std::uint64_t index;  // [G : G^(n-1)]
    Ratio         ratio;  // d / index
  };
  std::uint32_t      p;
  std::vector<Level> levels;
  Ratio              threshold;
  // Every observed ratio strictly exceeds the threshold.  Evidence only.
  bool               linear_growth_evidence;
  bool               stabilized;
  std::optional<std::string> truncated;
};

GrowthReport growth_statistics(Presentation const& g, std::uint32_t p, std::size_t n_max,
                               Ratio threshold = {1, 1}, SeriesOptions const& opts = {});

nlohmann::json to_json(GrowthReport const& r);

}  // namespace psolv
