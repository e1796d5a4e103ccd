#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "psolv/cosets.hpp"
#include "psolv/error.hpp"
#include "psolv/exec.hpp"
#include "psolv/word.hpp"

namespace psolv {

// ---- permutation quotients ----------------------------------------------------

// A finite group given by one permutation per ambient generator.  Series
// quotients are regular actions, where group elements correspond to points
// (element x is the one sending point 0 to x); that case is flagged and all
// element-level operations work on points without materializing
// permutations.
class FiniteQuotient {
 public:
  // General permutation group; `regular` is decided by enumeration.
  explicit FiniteQuotient(std::vector<Permutation> gens);
  // Caller guarantees the action is regular.  Transitivity is checked.
  static FiniteQuotient regular(std::vector<Permutation> gens);

  std::size_t degree() const noexcept { return degree_; }
  std::size_t num_generators() const noexcept { return gens_.size(); }
  std::vector<Permutation> const& generators() const noexcept { return gens_; }
  bool known_regular() const noexcept { return regular_; }

  std::uint32_t act(std::uint32_t point, Letter l) const {
    return l.exp > 0 ? gens_[l.gen][point] : inverse_[l.gen][point];
  }
  std::uint32_t apply(std::uint32_t point, Word const& w) const;

  // Multiplicative order of the element represented by w.
  std::uint64_t element_order(Word const& w) const;

 private:
  std::size_t              degree_;
  std::vector<Permutation> gens_;
  std::vector<Permutation> inverse_;
  bool                     regular_ = false;
};

// Elements of a quotient, each with a shortest witness word found by BFS
// (generators before inverses, in index order).  For regular quotients the
// element list is the point list.
struct Enumeration {
  std::size_t order = 0;
  // BFS tree: parent element and the letter leading to each element;
  // element 0 is the identity.
  std::vector<std::uint32_t> parent;
  std::vector<Letter>        letter;
  // Elements in discovery order; parents precede children.
  std::vector<std::uint32_t> bfs_order;
  // Only filled for non-regular quotients.
  std::vector<Permutation> permutations;

  Word witness(std::uint32_t element) const;
};

Enumeration enumerate(FiniteQuotient const& q, std::size_t cap);

// ---- groups by multiplication table ---------------------------------------------

// Default cap on the order of groups held as a full table.
inline constexpr std::size_t kTableCap = std::size_t{1} << 12;

// Finite group with an explicit multiplication table, identity = element 0.
class FiniteGroup {
 public:
  // Validates closure, identity at 0, inverses and associativity.
  static FiniteGroup from_table(std::vector<std::uint32_t> table, std::size_t order);
  static FiniteGroup from_quotient(FiniteQuotient const& q,
                                   std::size_t cap = kTableCap);
  static FiniteGroup from_permutations(std::vector<Permutation> gens,
                                       std::size_t cap = kTableCap);

  std::size_t order() const noexcept { return order_; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return table_[static_cast<std::size_t>(a) * order_ + b];
  }
  std::uint32_t inverse(std::uint32_t a) const { return inv_[a]; }
  std::uint32_t commutator(std::uint32_t a, std::uint32_t b) const {
    return mul(mul(inv_[a], inv_[b]), mul(a, b));
  }
  std::uint32_t power(std::uint32_t a, std::uint64_t k) const;
  std::uint64_t element_order(std::uint32_t a) const;

  std::vector<std::uint32_t> const& table() const noexcept { return table_; }
  std::vector<std::uint32_t> const& inverses() const noexcept { return inv_; }
  // Images of the ambient generators when built from a quotient or from
  // permutations; empty for raw tables.
  std::vector<std::uint32_t> const& generators() const noexcept { return gens_; }

  // Evaluates a word over generators().
  std::uint32_t evaluate(Word const& w) const;

 private:
  friend struct QuotientGroup quotient_group(FiniteGroup const&, struct Subset const&);
  FiniteGroup() = default;
  void finish();  // fills inverses
  std::size_t                order_ = 0;
  std::vector<std::uint32_t> table_;
  std::vector<std::uint32_t> inv_;
  std::vector<std::uint32_t> gens_;
};

// A subset of a FiniteGroup stored as a mask plus its sorted element list.
struct Subset {
  std::vector<std::uint8_t>  mask;
  std::vector<std::uint32_t> elements;

  std::size_t size() const noexcept { return elements.size(); }
  bool contains(std::uint32_t x) const { return mask[x] != 0; }
  friend bool operator==(Subset const& a, Subset const& b) {
    return a.elements == b.elements;
  }
};

Subset subset_from_mask(std::vector<std::uint8_t> mask);
Subset whole_group(FiniteGroup const& g);
Subset trivial_subgroup(FiniteGroup const& g);

// Subgroup generated by `gens`.
Subset generated_subgroup(FiniteGroup const& g, std::span<std::uint32_t const> gens);
// Smallest normal subgroup containing `gens`.
Subset normal_closure(FiniteGroup const& g, std::span<std::uint32_t const> gens);
bool is_subgroup(FiniteGroup const& g, Subset const& s);
bool is_normal(FiniteGroup const& g, Subset const& s);
// Every normal subgroup, sorted by size then elements.
std::vector<Subset> normal_subgroups(FiniteGroup const& g);

// Subgroup as a group in its own right; `embedding[i]` is the ambient
// element of subgroup element i (identity first).
struct SubgroupGroup {
  FiniteGroup                group;
  std::vector<std::uint32_t> embedding;
};
SubgroupGroup subgroup_group(FiniteGroup const& g, Subset const& s);

// Quotient by a normal subgroup; `projection[x]` is the coset of x.
struct QuotientGroup {
  FiniteGroup                group;
  std::vector<std::uint32_t> projection;
};
QuotientGroup quotient_group(FiniteGroup const& g, Subset const& normal);

// ---- verbal subgroups and the brute-force series ----------------------------------

enum class SeriesKind { derived, lower_central };

std::string to_string(SeriesKind k);
SeriesKind series_kind_from_string(std::string const& s);

// Subgroup generated by the values of the verbal forms over `seeds`:
//   derived:        x^p and [x, y] for x, y in seeds
//   lower_central:  x^p and [x, g] for x in seeds, g in the whole group
// Throws CapExceeded above kTableCap.
Subset verbal_closure(FiniteGroup const& g, Subset const& seeds, SeriesKind kind,
                      std::uint32_t p, Exec exec = Exec::parallel);

// Terms S_1 = G, S_2, ... of g's own series, ending at the first term equal to
// its predecessor (trivial for p-groups).
std::vector<Subset> series_terms_brute(FiniteGroup const& g, std::uint32_t p,
                                       SeriesKind kind, Exec exec = Exec::parallel);
// log_p of successive indices; throws InvalidInput if an index is not a power
// of p.
std::vector<std::size_t> quotient_series_brute(FiniteGroup const& g, std::uint32_t p,
                                               SeriesKind kind,
                                               Exec exec = Exec::parallel);

// ---- induced maps ---------------------------------------------------------------

struct InducedMap {
  bool well_defined = false;
  bool injective    = false;
  bool surjective   = false;
  std::size_t image_size = 0;
  // Element (point) of the target for each source element; empty when not
  // well defined.
  std::vector<std::uint32_t> map;
  // Human-readable reason when not well defined.
  std::string failure;
};

// The map sending source generator i to `images[i]` (words over the target's
// generators).  Both quotients must be regular.  Decided by walking the
// source Cayley graph and checking every edge.
InducedMap induced_map_flags(FiniteQuotient const& source, FiniteQuotient const& target,
                             std::vector<Word> const& images,
                             std::size_t cap = std::size_t{1} << 22);

// ---- JSON ---------------------------------------------------------------------

nlohmann::json to_json(FiniteQuotient const& q);
// {"order": n, "table": [[...], ...]} with identity first.
nlohmann::json to_json(FiniteGroup const& g);
FiniteGroup finite_group_from_json(nlohmann::json const& j);
// {"degree": n, "gens": [[...], ...]}
FiniteQuotient finite_quotient_from_json(nlohmann::json const& j);

}  // namespace psolv
