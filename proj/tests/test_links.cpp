#include "doctest.h"
#include "psolv/error.hpp"
#include "psolv/links.hpp"
#include "support.hpp"

using namespace psolv;

namespace {

CrossingList load(std::string const& name) {
  return crossing_list_from_json(nlohmann::json::parse(read_file(data_path("links/" + name + ".json"))));
}

bool same_diagram(CrossingList const& a, CrossingList const& b) {
  return a.num_arcs == b.num_arcs && a.crossings == b.crossings && a.components == b.components;
}

std::map<std::uint64_t, std::uint64_t> cyclic_histogram(std::uint64_t n) {
  // Z_n has phi(d) elements of order d for d | n; here n is a prime power.
  std::map<std::uint64_t, std::uint64_t> h{{1, 1}};
  for (std::uint64_t d = 2; d <= n; d *= 2) h[d] = d / 2;
  return h;
}

}  // namespace

TEST_CASE("fixture files match the built-in diagrams") {
  CHECK(same_diagram(load("unknot"), unknot_diagram()));
  CHECK(same_diagram(load("trefoil"), trefoil_diagram()));
  CHECK(same_diagram(load("figure8"), figure_eight_diagram()));
  CHECK(same_diagram(load("hopf"), hopf_diagram()));
  CHECK(same_diagram(load("unlink2"), unlink_diagram(2)));
  for (auto const& c : {trefoil_diagram(), hopf_diagram(-1), unlink_diagram(3)})
    CHECK(same_diagram(crossing_list_from_json(to_json(c)), c));
}

TEST_CASE("diagram validation") {
  auto c = trefoil_diagram();
  c.crossings[0].over = 7;
  CHECK_THROWS_AS(validate(c), InvalidInput);
  c = trefoil_diagram();
  c.crossings[1].sign = 0;
  CHECK_THROWS_AS(validate(c), InvalidInput);
  c = trefoil_diagram();
  // arc 1 would end twice
  c.crossings[1].under_in = 0;
  CHECK_THROWS_AS(validate(c), InvalidInput);
  c = trefoil_diagram();
  c.components = {{0, 1}};
  CHECK_THROWS_AS(validate(c), InvalidInput);
  CHECK_THROWS_AS(crossing_list_from_json(nlohmann::json{{"arcs", 1}}), Error);
  for (auto const& d : {unknot_diagram(), trefoil_diagram(), figure_eight_diagram(), hopf_diagram(),
                        hopf_diagram(-1), unlink_diagram(1), unlink_diagram(3)})
    CHECK_NOTHROW(validate(d));
}

TEST_CASE("H_1 of a link group is free on the meridians") {
  std::pair<CrossingList, std::size_t> const cases[] = {
      {unknot_diagram(), 1},    {trefoil_diagram(), 1}, {figure_eight_diagram(), 1},
      {hopf_diagram(), 2},      {hopf_diagram(-1), 2},  {unlink_diagram(2), 2},
      {unlink_diagram(3), 3}};
  for (auto const& [c, mu] : cases)
    for (std::uint32_t p : {2u, 3u, 5u}) CHECK(h1_mod_p(wirtinger(c), p).dim == mu);
}

TEST_CASE("Wirtinger groups match hand presentations") {
  std::pair<CrossingList, char const*> const cases[] = {
      {trefoil_diagram(), "trefoil"}, {figure_eight_diagram(), "figure8"}, {hopf_diagram(), "zz"},
      {unlink_diagram(2), "free2"},   {unknot_diagram(), "free1"}};
  for (auto const& [c, name] : cases) {
    CAPTURE(name);
    for (std::uint32_t p : {2u, 3u}) {
      auto a = derived_stage(wirtinger(c), p, 2);
      auto b = derived_stage(fixture(name), p, 2);
      CHECK(a.layer_dims == b.layer_dims);
      CHECK(element_order_histogram(a.quotient) == element_order_histogram(b.quotient));
    }
  }
}

TEST_CASE("known invariants") {
  auto u = link_invariant(unknot_diagram(), 2, 3);
  CHECK(u.order == 8);
  CHECK(u.meridian_orders == std::vector<std::uint64_t>{8});
  CHECK(u.order_histogram == cyclic_histogram(8));
  // G/G^(2) of Z^2 at p = 2 is (Z_4)^2.
  auto h = link_invariant(hopf_diagram(), 2, 2);
  CHECK(h.order == 16);
  CHECK(h.layer_dims == std::vector<std::size_t>{2, 2});
  CHECK(h.meridian_orders == std::vector<std::uint64_t>{4, 4});
  CHECK(h.order_histogram == std::map<std::uint64_t, std::uint64_t>{{1, 1}, {2, 3}, {4, 12}});
  auto f = link_invariant(unlink_diagram(2), 2, 2);
  CHECK(f.order == 128);
  CHECK(f.layer_dims == std::vector<std::size_t>{2, 5});
  CHECK(link_invariant(trefoil_diagram(), 3, 2).order == 9);
  CHECK(to_json(h)["order"] == 16);

  SeriesOptions tiny;
  tiny.max_order = 32;
  CHECK_THROWS_AS(link_invariant(unlink_diagram(2), 2, 2, tiny), SeriesExplosion);
}

TEST_CASE("Reidemeister moves preserve the invariant") {
  for (auto const& c : {unknot_diagram(), trefoil_diagram(), figure_eight_diagram(), hopf_diagram()}) {
    auto base = link_invariant(c, 2, 2);
    for (std::uint32_t arc = 0; arc < c.num_arcs; ++arc) {
      for (int s : {1, -1}) {
        for (bool over_first : {true, false}) {
          auto r1 = reidemeister1(c, arc, s, over_first);
          CHECK_NOTHROW(validate(r1));
          CHECK(r1.crossings.size() == c.crossings.size() + 1);
          CHECK(link_invariant(r1, 2, 2) == base);
        }
      }
    }
    for (std::uint32_t o = 0; o < c.num_arcs; ++o) {
      for (std::uint32_t un = 0; un < c.num_arcs; ++un) {
        if (o == un) continue;
        auto r2 = reidemeister2(c, o, un);
        CHECK_NOTHROW(validate(r2));
        CHECK(link_invariant(r2, 2, 2) == base);
      }
    }
  }
  // moves compose
  auto t = reidemeister2(reidemeister1(trefoil_diagram(), 1, -1), 0, 3, -1);
  CHECK(link_invariant(t, 3, 2) == link_invariant(trefoil_diagram(), 3, 2));
}

TEST_CASE("comparisons") {
  auto hu = compare_links(hopf_diagram(), unlink_diagram(2), 2, 2);
  CHECK(hu.verdict == LinkVerdict::distinguished);
  CHECK_FALSE(hu.reasons.empty());
  auto tu = compare_links(trefoil_diagram(), unknot_diagram(), 2, 3);
  CHECK(tu.verdict == LinkVerdict::not_distinguished);
  CHECK(tu.reasons.empty());
  SeriesOptions tiny;
  tiny.max_order = 32;
  auto inc = compare_links(hopf_diagram(), unlink_diagram(2), 2, 2, tiny);
  CHECK(inc.verdict == LinkVerdict::inconclusive);
  CHECK(to_string(inc.verdict) == "inconclusive");
  CHECK(to_json(hu)["verdict"] == "distinguished");
}
