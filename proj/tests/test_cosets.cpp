#include <random>

#include "doctest.h"
#include "psolv/cosets.hpp"
#include "psolv/error.hpp"
#include "psolv/kernels.hpp"
#include "psolv/series.hpp"
#include "support.hpp"

using namespace psolv;

namespace {

// Regular action of Z_n with every generator acting as +1.
std::vector<Permutation> cyclic_action(std::size_t gens, std::uint32_t n) {
  Permutation p(n);
  for (std::uint32_t i = 0; i < n; ++i) p[i] = (i + 1) % n;
  return std::vector<Permutation>(gens, p);
}

Word random_word(std::size_t gens, std::size_t len, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> g(0, static_cast<std::uint32_t>(gens - 1));
  std::bernoulli_distribution inv(0.5);
  std::vector<Letter> out;
  for (std::size_t i = 0; i < len; ++i)
    out.push_back({g(rng), static_cast<std::int8_t>(inv(rng) ? -1 : 1)});
  return Word(std::move(out));
}

// Substitutes ambient words for subgroup generators.
Word to_ambient(Word const& w, SubgroupPresentation const& sub) {
  Word out;
  for (Letter l : w) {
    auto a = sub.ambient_word(l.gen);
    out = out * (l.exp > 0 ? a : invert(a));
  }
  return out;
}

}  // namespace

TEST_CASE("coset tables validate their input") {
  auto f2 = fixture("free2");
  CHECK_NOTHROW(CosetTable(f2, cyclic_action(2, 4)));
  // Not a permutation.
  CHECK_THROWS_AS(CosetTable(f2, {{0, 0}, {1, 0}}), InvalidInput);
  // Not transitive.
  CHECK_THROWS_AS(CosetTable(f2, {{1, 0, 2}, {1, 0, 2}}), InvalidInput);
  // Relator a^2 does not act trivially on Z_4.
  CHECK_THROWS_AS(CosetTable(fixture("z2"), cyclic_action(1, 4)), InvalidInput);
  CHECK_NOTHROW(CosetTable(fixture("z4"), cyclic_action(1, 4)));
  auto t = CosetTable(f2, cyclic_action(2, 5));
  CHECK(t.apply(0, Word{{0, 1}, {1, 1}, {1, -1}, {0, 1}}) == 2);
  CHECK(to_json(t)["n"] == 5);
}

TEST_CASE("Schreier rank of a free group's finite-index subgroup") {
  // rank = 1 + index (k - 1)
  for (std::size_t k : {1u, 2u, 3u}) {
    for (std::uint32_t n : {2u, 3u, 8u}) {
      auto g = Presentation::anonymous(k);
      CosetTable t(g, cyclic_action(k, n));
      auto sub = reidemeister_schreier(g, t, schreier_transversal(t));
      CHECK(sub.schreier_generators().size() == 1 + n * (k - 1));
      CHECK(sub.presentation().relators().empty());
    }
  }
}

TEST_CASE("transversal words reach their cosets") {
  auto g = fixture("trefoil");
  auto stage = derived_stage(g, 3, 2);
  CosetTable t(g, stage.quotient.generators());
  auto tr = schreier_transversal(t);
  for (std::uint32_t c = 0; c < t.size(); ++c) CHECK(t.apply(0, tr.representative(c)) == c);
  CHECK(tr.representative(0).empty());
}

TEST_CASE("rewriting into Schreier generators inverts substitution") {
  std::mt19937_64 rng(17);
  auto g = fixture("free2");
  CosetTable t(g, derived_stage(g, 2, 2).quotient.generators());
  auto sub = reidemeister_schreier(g, t, schreier_transversal(t));
  for (std::size_t i = 0; i < sub.schreier_generators().size(); ++i)
    CHECK(rewrite_in_subgroup(sub.ambient_word(i), sub) == Word::generator(static_cast<std::uint32_t>(i)));
  int tested = 0;
  while (tested < 50) {
    auto w = random_word(2, 12, rng);
    if (t.apply(0, w) != 0) {
      CHECK_THROWS_AS(rewrite_in_subgroup(w, sub), InvalidInput);
      continue;
    }
    CHECK(to_ambient(rewrite_in_subgroup(w, sub), sub) == w);
    ++tested;
  }
}

TEST_CASE("subgroup relators are conjugates of ambient relators") {
  auto g = fixture("klein");
  auto stage = derived_stage(g, 2, 2);
  CosetTable t(g, stage.quotient.generators());
  auto tr = schreier_transversal(t);
  auto sub = reidemeister_schreier(g, t, tr);
  auto const& rels = sub.presentation().relators();
  std::size_t idx = 0;
  for (auto const& r : g.relators()) {
    for (std::uint32_t c = 0; c < t.size(); ++c, ++idx) {
      if (idx >= rels.size()) break;
      auto rep = tr.representative(c);
      CHECK(to_ambient(rels[idx], sub) == rep * r * invert(rep));
    }
  }
}

TEST_CASE("Reidemeister-Schreier: serial and parallel agree") {
  auto g = fixture("figure8");
  CosetTable t(g, derived_stage(g, 2, 3).quotient.generators());
  auto tr = schreier_transversal(t);
  auto a = reidemeister_schreier(g, t, tr, Exec::serial);
  auto b = reidemeister_schreier(g, t, tr, Exec::parallel);
  CHECK(a.presentation() == b.presentation());
  CHECK(a.edge_labels() == b.edge_labels());
}
