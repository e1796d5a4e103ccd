#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "json.hpp"
#include "psolv/exec.hpp"
#include "psolv/presentation.hpp"
#include "psolv/word.hpp"

namespace psolv {

using Permutation = std::vector<std::uint32_t>;

Permutation inverse_permutation(Permutation const& p);

// Right action of a finitely presented group on the cosets of a normal
// subgroup, coset 0 being the subgroup itself.  Construction checks that
// every relator acts trivially and that the action is transitive.
class CosetTable {
 public:
  CosetTable(Presentation group, std::vector<Permutation> action);

  Presentation const& group() const noexcept { return *group_; }
  std::size_t size() const noexcept { return size_; }
  std::size_t num_generators() const noexcept { return action_.size(); }

  std::vector<Permutation> const& action() const noexcept { return action_; }
  std::vector<Permutation> const& inverse_action() const noexcept { return inverse_; }

  std::uint32_t act(std::uint32_t coset, Letter l) const {
    return l.exp > 0 ? action_[l.gen][coset] : inverse_[l.gen][coset];
  }
  std::uint32_t apply(std::uint32_t coset, Word const& w) const;

 private:
  std::shared_ptr<Presentation const> group_;
  std::size_t                         size_;
  std::vector<Permutation>            action_;
  std::vector<Permutation>            inverse_;
};

CosetTable coset_table_from_quotient(Presentation const& group,
                                     std::vector<Permutation> action);

nlohmann::json to_json(CosetTable const& t);

// Schreier transversal from breadth-first search over generators, then
// inverse generators, in index order.
class Transversal {
 public:
  struct TreeEdge {
    std::uint32_t parent;
    Letter        letter;
  };

  std::vector<Word> const& representatives() const noexcept { return reps_; }
  Word const& representative(std::uint32_t coset) const { return reps_.at(coset); }
  // Parent edge of each coset except 0.
  TreeEdge const& tree_edge(std::uint32_t coset) const { return edges_.at(coset); }
  // True when the forward edge (coset, gen) belongs to the spanning tree.
  bool is_tree_edge(std::uint32_t coset, std::uint32_t gen) const {
    return tree_[coset * num_gens_ + gen] != 0;
  }

 private:
  friend Transversal schreier_transversal(CosetTable const& t);
  std::vector<Word>         reps_;
  std::vector<TreeEdge>     edges_;
  std::vector<std::uint8_t> tree_;
  std::size_t               num_gens_ = 0;
};

Transversal schreier_transversal(CosetTable const& t);

// Presentation of the subgroup (coset 0's stabilizer) on Schreier generators
// s_{c,g} = rep(c) g rep(c.g)^-1 for non-tree edges (c, g).
class SubgroupPresentation {
 public:
  struct SchreierGenerator {
    std::uint32_t coset;
    std::uint32_t gen;
  };

  Presentation const& presentation() const noexcept { return presentation_; }
  std::vector<SchreierGenerator> const& schreier_generators() const noexcept {
    return sgens_;
  }
  // Subgroup generator index on edge (coset, gen), or -1 for a tree edge.
  std::int64_t label(std::uint32_t coset, std::uint32_t gen) const {
    return edge_label_[coset * table_->num_generators() + gen];
  }
  std::vector<std::int64_t> const& edge_labels() const noexcept { return edge_label_; }
  CosetTable const& table() const noexcept { return *table_; }
  Transversal const& transversal() const noexcept { return *transversal_; }

  // The ambient word rep(c) g rep(c.g)^-1 of subgroup generator i.
  Word ambient_word(std::size_t i) const;

 private:
  friend SubgroupPresentation reidemeister_schreier(Presentation const&,
                                                    CosetTable const&,
                                                    Transversal const&, Exec);
  Presentation                       presentation_;
  std::vector<SchreierGenerator>     sgens_;
  std::vector<std::int64_t>          edge_label_;
  std::shared_ptr<CosetTable const>  table_;
  std::shared_ptr<Transversal const> transversal_;
};

SubgroupPresentation reidemeister_schreier(Presentation const& group,
                                           CosetTable const& table,
                                           Transversal const& transversal,
                                           Exec exec = Exec::parallel);

// Rewrites a word of the ambient group lying in the subgroup into Schreier
// generators.  Throws InvalidInput if `w` does not fix coset 0.
Word rewrite_in_subgroup(Word const& w, SubgroupPresentation const& sub);

}  // namespace psolv
