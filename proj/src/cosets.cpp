#include "psolv/cosets.hpp"

#include <deque>

#include "psolv/error.hpp"
#include "psolv/kernels.hpp"

namespace psolv {

Permutation inverse_permutation(Permutation const& p) {
  Permutation inv(p.size());
  for (std::uint32_t i = 0; i < p.size(); ++i) inv[p[i]] = i;
  return inv;
}

// ---- CosetTable ---------------------------------------------------------------

CosetTable::CosetTable(Presentation group, std::vector<Permutation> action)
    : group_(std::make_shared<Presentation const>(std::move(group))),
      size_(action.empty() ? 1 : action.front().size()),
      action_(std::move(action)) {
  if (action_.size() != group_->num_generators()) {
    throw InvalidInput("coset table needs one permutation per generator");
  }
  if (size_ == 0) throw InvalidInput("coset table must have at least one coset");
  for (auto const& perm : action_) {
    if (perm.size() != size_) throw InvalidInput("permutations of different degrees");
    std::vector<bool> hit(size_, false);
    for (auto x : perm) {
      if (x >= size_ || hit[x]) throw InvalidInput("generator action is not a permutation");
      hit[x] = true;
    }
    inverse_.push_back(inverse_permutation(perm));
  }
  // Transitivity from coset 0.
  std::vector<bool>          seen(size_, false);
  std::deque<std::uint32_t>  queue{0};
  std::size_t                count = 1;
  seen[0] = true;
  while (!queue.empty()) {
    auto c = queue.front();
    queue.pop_front();
    for (std::size_t g = 0; g < action_.size(); ++g) {
      for (auto next : {action_[g][c], inverse_[g][c]}) {
        if (!seen[next]) {
          seen[next] = true;
          ++count;
          queue.push_back(next);
        }
      }
    }
  }
  if (count != size_) {
    throw InvalidInput("action is not transitive: orbit of coset 0 has "
                       + std::to_string(count) + " of " + std::to_string(size_)
                       + " points");
  }
  for (std::size_t r = 0; r < group_->relators().size(); ++r) {
    auto const& rel = group_->relators()[r];
    for (std::uint32_t c = 0; c < size_; ++c) {
      if (apply(c, rel) != c) {
        throw InvalidInput("relator " + std::to_string(r) + " ("
                           + format_word(rel, *group_) + ") moves point "
                           + std::to_string(c));
      }
    }
  }
}

std::uint32_t CosetTable::apply(std::uint32_t coset, Word const& w) const {
  for (Letter l : w) coset = act(coset, l);
  return coset;
}

CosetTable coset_table_from_quotient(Presentation const& group,
                                     std::vector<Permutation> action) {
  return CosetTable(group, std::move(action));
}

nlohmann::json to_json(CosetTable const& t) {
  return {{"n", t.size()}, {"gens", t.num_generators()}, {"action", t.action()}};
}

// ---- Transversal ------------------------------------------------------------

Transversal schreier_transversal(CosetTable const& t) {
  Transversal tr;
  std::size_t const k = t.num_generators();
  tr.num_gens_ = k;
  tr.reps_.assign(t.size(), Word());
  tr.edges_.assign(t.size(), Transversal::TreeEdge{0, Letter{0, 0}});
  tr.tree_.assign(t.size() * k, 0);
  std::vector<bool>         seen(t.size(), false);
  std::deque<std::uint32_t> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    auto c = queue.front();
    queue.pop_front();
    for (int sign : {1, -1}) {
      for (std::uint32_t g = 0; g < k; ++g) {
        Letter l{g, static_cast<std::int8_t>(sign)};
        auto   next = t.act(c, l);
        if (seen[next]) continue;
        seen[next]      = true;
        tr.reps_[next]  = multiply(tr.reps_[c], Word{l});
        tr.edges_[next] = {c, l};
        // Forward edge (x, g) with x.g = y; for an inverse step the edge is
        // (next, g).
        tr.tree_[(sign > 0 ? c : next) * k + g] = 1;
        queue.push_back(next);
      }
    }
  }
  return tr;
}

// ---- Reidemeister-Schreier ----------------------------------------------------

Word SubgroupPresentation::ambient_word(std::size_t i) const {
  auto const& s   = sgens_.at(i);
  auto const& t   = *table_;
  auto const  end = t.act(s.coset, Letter{s.gen, 1});
  return multiply(multiply(transversal_->representative(s.coset), Word::generator(s.gen)),
                  invert(transversal_->representative(end)));
}

SubgroupPresentation reidemeister_schreier(Presentation const& group,
                                           CosetTable const& table,
                                           Transversal const& transversal,
                                           Exec exec) {
  if (group.num_generators() != table.num_generators()) {
    throw InvalidInput("coset table does not match the presentation");
  }
  SubgroupPresentation sub;
  std::size_t const k = table.num_generators();
  std::size_t const n = table.size();
  sub.edge_label_.assign(n * k, -1);
  for (std::uint32_t c = 0; c < n; ++c) {
    for (std::uint32_t g = 0; g < k; ++g) {
      if (transversal.is_tree_edge(c, g)) continue;
      sub.edge_label_[c * k + g] = static_cast<std::int64_t>(sub.sgens_.size());
      sub.sgens_.push_back({c, g});
    }
  }
  kernels::RewriteInput in{&group.relators(), &table.action(), &table.inverse_action(),
                           &sub.edge_label_, n, k};
  std::vector<Word> rels = kernels::rewrite_relators(in, exec);

  std::vector<std::string> names;
  names.reserve(sub.sgens_.size());
  for (auto const& s : sub.sgens_) {
    names.push_back("s" + std::to_string(s.coset) + "_" + group.generator_names()[s.gen]);
  }
  sub.presentation_ = Presentation(std::move(names), std::move(rels));
  sub.table_        = std::make_shared<CosetTable const>(table);
  sub.transversal_  = std::make_shared<Transversal const>(transversal);
  return sub;
}

Word rewrite_in_subgroup(Word const& w, SubgroupPresentation const& sub) {
  auto const& t = sub.table();
  kernels::RewriteInput in{&t.group().relators(), &t.action(), &t.inverse_action(),
                           &sub.edge_labels(), t.size(), t.num_generators()};
  auto [word, end] = kernels::rewrite_from(w, 0, in);
  if (end != 0) {
    throw InvalidInput("word does not lie in the subgroup (ends at coset "
                       + std::to_string(end) + ")");
  }
  return word;
}

}  // namespace psolv
