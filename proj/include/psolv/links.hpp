#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "psolv/presentation.hpp"
#include "psolv/series.hpp"

namespace psolv {

struct Crossing {
  std::uint32_t over;
  std::uint32_t under_in;
  std::uint32_t under_out;
  int           sign;  // +1 or -1
  friend bool operator==(Crossing const&, Crossing const&) = default;
};

// Oriented link diagram as arcs and crossings.  Arc a ends at the crossing
// where it is under_in and the next arc of its component starts there as
// under_out.  A component with no under-crossings is a single arc.
struct CrossingList {
  std::size_t                             num_arcs = 0;
  std::vector<Crossing>                   crossings;
  std::vector<std::vector<std::uint32_t>> components;
};

// Throws InvalidInput naming the offending arc or crossing.
void validate(CrossingList const& c);

// One generator per arc, named a0, a1, ...; crossing relator
// under_out^-1 over^-s under_in over^s, with the last crossing's dropped.
Presentation wirtinger(CrossingList const& c);

// Built-in diagrams.
CrossingList unknot_diagram();
CrossingList trefoil_diagram();
CrossingList figure_eight_diagram();
CrossingList hopf_diagram(int sign = 1);
CrossingList unlink_diagram(std::size_t components = 2);

// Reidemeister I: a kink with the given sign on `arc`.  `over_first` picks
// whether the strand passes over the kink crossing before passing under it.
CrossingList reidemeister1(CrossingList const& c, std::uint32_t arc, int sign,
                           bool over_first = true);
// Reidemeister II: pushes arc `under` beneath arc `over`, creating two
// crossings of opposite sign.
CrossingList reidemeister2(CrossingList const& c, std::uint32_t over, std::uint32_t under,
                           int sign = 1);

// Largest quotient order for which the element-order histogram is computed.
inline constexpr std::uint64_t kHistogramCap = std::uint64_t{1} << 16;

// Iso-invariants of the level-n derived p-quotient of the link group.
struct LinkInvariant {
  std::uint32_t            p;
  std::size_t              n;
  std::size_t              components;
  std::uint64_t            order;
  std::vector<std::size_t> layer_dims;
  bool                     stabilized;
  // Order of each component's meridian, sorted.
  std::vector<std::uint64_t> meridian_orders;
  // element order -> count; absent above kHistogramCap.
  std::optional<std::map<std::uint64_t, std::uint64_t>> order_histogram;

  friend bool operator==(LinkInvariant const&, LinkInvariant const&) = default;
};

// Throws SeriesExplosion when the quotient exceeds opts.max_order.
LinkInvariant link_invariant(CrossingList const& c, std::uint32_t p, std::size_t n,
                             SeriesOptions const& opts = {});

// Histogram of element orders of a regular quotient.
std::map<std::uint64_t, std::uint64_t> element_order_histogram(FiniteQuotient const& q);

enum class LinkVerdict { distinguished, not_distinguished, inconclusive };
std::string to_string(LinkVerdict v);

struct LinkComparison {
  LinkVerdict                  verdict;
  std::optional<LinkInvariant> first;
  std::optional<LinkInvariant> second;
  // Names of the differing invariants, or the explosion message.
  std::vector<std::string>     reasons;
};

// Distinguished iff some invariant differs.  Matching invariants never mean
// the links are equivalent.
LinkComparison compare_links(CrossingList const& a, CrossingList const& b, std::uint32_t p,
                             std::size_t n, SeriesOptions const& opts = {});

// {"arcs": 3, "components": [[0, 1, 2]], "crossings": [[o, i, j, s], ...]}
nlohmann::json to_json(CrossingList const& c);
CrossingList crossing_list_from_json(nlohmann::json const& j);
nlohmann::json to_json(LinkInvariant const& inv);
nlohmann::json to_json(LinkComparison const& cmp);

}  // namespace psolv
