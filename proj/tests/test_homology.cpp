#include <algorithm>
#include <array>

#include "doctest.h"
#include "psolv/error.hpp"
#include "psolv/homology.hpp"
#include "psolv/series.hpp"
#include "support.hpp"

using namespace psolv;

namespace {

FiniteGroup cyclic(std::uint32_t n) {
  std::vector<std::uint32_t> t;
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b) t.push_back((a + b) % n);
  return FiniteGroup::from_table(t, n);
}

FiniteGroup product(FiniteGroup const& a, FiniteGroup const& b) {
  auto n = b.order();
  std::vector<std::uint32_t> t;
  for (std::uint32_t x = 0; x < a.order() * n; ++x)
    for (std::uint32_t y = 0; y < a.order() * n; ++y)
      t.push_back(static_cast<std::uint32_t>(a.mul(x / n, y / n) * n + b.mul(x % n, y % n)));
  return FiniteGroup::from_table(t, a.order() * n);
}

FiniteGroup p_group(std::string const& name, std::uint32_t p = 2) {
  return FiniteGroup::from_quotient(stabilized_derived_quotient(fixture(name), p).quotient);
}

// H_k(Z_n; F_p) from the periodic resolution: d alternates 0 and
// multiplication by n, so every positive degree is F_p when p | n.
std::size_t cyclic_oracle(std::uint32_t n, std::uint32_t p, int /*k*/) { return n % p == 0 ? 1 : 0; }

// Kunneth over a field for Z_{n_1} x ... x Z_{n_r}: returns {H_1, H_2}.
std::pair<std::size_t, std::size_t> abelian_oracle(std::vector<std::uint32_t> const& ns,
                                                   std::uint32_t p) {
  std::size_t h1 = 0, h2 = 0;
  for (auto n : ns) {
    // H_2(A x Z_n) = H_2(A) + H_1(A) H_1(Z_n) + H_2(Z_n)
    h2 = h2 + h1 * cyclic_oracle(n, p, 1) + cyclic_oracle(n, p, 2);
    h1 = h1 + cyclic_oracle(n, p, 1);
  }
  return {h1, h2};
}

FiniteGroup abelian(std::vector<std::uint32_t> const& ns) {
  FiniteGroup g = cyclic(ns[0]);
  for (std::size_t i = 1; i < ns.size(); ++i) g = product(g, cyclic(ns[i]));
  return g;
}

}  // namespace

TEST_CASE("bar homology of abelian groups matches cyclic resolutions and Kunneth") {
  std::vector<std::pair<std::vector<std::uint32_t>, std::uint32_t>> const cases = {
      {{2}, 2},    {{4}, 2},       {{8}, 2},    {{3}, 2},       {{9}, 3},    {{6}, 2},
      {{6}, 3},    {{2, 2}, 2},    {{4, 2}, 2}, {{2, 2, 2}, 2}, {{3, 3}, 3}, {{2, 3}, 2},
      {{4, 4}, 2}, {{2, 2, 2, 2}, 2}, {{5}, 5}, {{2, 6}, 2}};
  for (auto const& [ns, p] : cases) {
    auto g = abelian(ns);
    auto [h1, h2] = abelian_oracle(ns, p);
    CAPTURE(g.order());
    CAPTURE(p);
    CHECK(bar_h1(g, p) == h1);
    CHECK(bar_h2(g, p) == h2);
  }
}

TEST_CASE("bar homology of non-abelian 2-groups matches universal coefficients") {
  // dim H_2(G; F_p) = rank_p M(G) + dim H_1(G; F_p), with Schur multipliers
  // M(D_8) = M(D_16) = Z_2 and M(Q_8) = M(Q_16) = M(SD_16) = 1.
  std::pair<char const*, std::size_t> const cases[] = {
      {"d8", 1}, {"q8", 0}, {"d16", 1}, {"q16", 0}, {"sd16", 0}};
  for (auto [name, schur] : cases) {
    CAPTURE(name);
    auto h1 = h1_mod_p(fixture(name), 2).dim;
    auto g = p_group(name);
    CHECK(bar_h1(g, 2) == h1);
    CHECK(bar_h2(g, 2) == schur + h1);
  }
}

TEST_CASE("homology vanishes away from p") {
  // S_3 as permutations of {0,1,2}, indexed lexicographically.
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> x{0, 1, 2};
  do perms.push_back(x);
  while (std::next_permutation(x.begin(), x.end()));
  auto index = [&](std::array<int, 3> const& q) {
    return static_cast<std::uint32_t>(std::find(perms.begin(), perms.end(), q) - perms.begin());
  };
  std::vector<std::uint32_t> t;
  for (auto const& a : perms)
    for (auto const& b : perms) t.push_back(index({a[b[0]], a[b[1]], a[b[2]]}));
  auto s3 = FiniteGroup::from_table(t, 6);
  CHECK(bar_h1(s3, 2) == 1);
  CHECK(bar_h1(s3, 3) == 0);
  CHECK(bar_h1(s3, 5) == 0);
  CHECK(bar_h2(s3, 5) == 0);
  CHECK(bar_h1(cyclic(3), 2) == 0);
  CHECK(bar_h2(cyclic(9), 2) == 0);
}

TEST_CASE("bar slice is a complex; serial and parallel agree") {
  auto g = p_group("q8");
  auto s = bar_slice(g, 2, kHomologyCap, Exec::serial);
  auto t = bar_slice(g, 2, kHomologyCap, Exec::parallel);
  CHECK((s.d2.to_dense() * s.d3.to_dense()).is_zero());
  CHECK(s.d2.to_dense() == t.d2.to_dense());
  CHECK(s.d3.to_dense() == t.d3.to_dense());
  CHECK(s.d1.to_dense().is_zero());
  CHECK_THROWS_AS(bar_slice(abelian({2, 2, 2, 2, 2, 2}), 2), CapExceeded);
}

TEST_CASE("induced maps are functorial") {
  auto z4 = cyclic(4), z2 = cyclic(2);
  BarHomology h4(z4, 2), h2(z2, 2);
  std::vector<std::uint32_t> id4{0, 1, 2, 3}, proj{0, 1, 0, 1}, incl{0, 2};
  CHECK(induced_h1(h4, h4, id4) == FpMatrix::identity(2, 1));
  CHECK(induced_h2(h4, h4, id4) == FpMatrix::identity(2, 1));
  // Z_4 -> Z_2 is onto on H_1 and zero on H_2 mod 2.
  CHECK(induced_h1(h4, h2, proj) == FpMatrix::identity(2, 1));
  CHECK(induced_h2(h4, h2, proj).is_zero());
  // Z_2 -> Z_4 is zero on H_1 and an isomorphism on H_2.
  CHECK(induced_h1(h2, h4, incl).is_zero());
  CHECK(induced_h2(h2, h4, incl) == FpMatrix::identity(2, 1));
  // composite Z_2 -> Z_4 -> Z_2 is trivial
  CHECK((induced_h2(h2, h4, incl) * induced_h2(h4, h2, proj)).is_zero());
  CHECK_THROWS_AS(check_homomorphism(z4, z2, {0, 1, 1, 1}), InvalidInput);
}

TEST_CASE("H_2 filtrations") {
  BarHomology z4(cyclic(4), 2);
  // Q_{p,1} = Q, so the first term is everything.
  CHECK(dwyer_kernel(z4, 1).subspace.dim() == 1);
  // H_2(Z_4) -> H_2(Z_2) vanishes mod 2.
  CHECK(dwyer_kernel(z4, 2).subspace.dim() == 1);
  CHECK(dwyer_kernel(z4, 3).subspace.dim() == 0);
  CHECK(derived_image_filtration(z4, 1).subspace.dim() == 1);
  CHECK(derived_image_filtration(z4, 0).subspace.dim() == 1);
  BarHomology v4(abelian({2, 2}), 2);
  CHECK(dwyer_kernel(v4, 1).subspace.dim() == 3);
  CHECK(dwyer_kernel(v4, 2).subspace.dim() == 0);
  // Z_2 x Z_2 has trivial derived 2-subgroup, so the image filtration vanishes.
  CHECK(derived_image_filtration(v4, 1).subspace.dim() == 0);
  BarHomology d8(p_group("d8"), 2);
  for (std::size_t m = 1; m <= 3; ++m) {
    auto k = dwyer_kernel(d8, m);
    auto img = derived_image_filtration(d8, m);
    auto ker = derived_kernel_filtration(d8, m);
    CHECK(k.ambient == 3);
    CHECK(img.subspace.ambient() == 3);
    CHECK(ker.subspace.ambient() == 3);
  }
  for (auto name : {"d8", "q8", "d16", "q16", "sd16"}) {
    CAPTURE(name);
    BarHomology q(p_group(name), 2);
    // Phi_{p,m} shrinks as m grows and reaches 0 once Q_{p,m} = 1.
    auto prev = dwyer_kernel(q, 1).subspace;
    CHECK(prev.dim() == q.h2());
    for (std::size_t m = 2; m <= 6; ++m) {
      auto cur = dwyer_kernel(q, m).subspace;
      CHECK(cur.is_subspace_of(prev));
      prev = cur;
    }
    CHECK(prev.dim() == 0);
    CHECK(derived_image_filtration(q, 0).subspace.dim() == q.h2());
    CHECK(derived_image_filtration(q, 5).subspace.dim() == 0);
  }
  auto const& zg = z4.group();
  auto two = generated_subgroup(zg, std::vector<std::uint32_t>{2});
  CHECK(induced_h2_inclusion(z4, two).image.dim() == 1);
  CHECK(induced_h2_inclusion(z4, generated_subgroup(zg, std::vector<std::uint32_t>{})).image.dim() == 0);
  // Center of D_8 maps to H_2(D_8) through a subgroup inclusion.
  auto const& g = d8.group();
  std::uint32_t a2 = g.evaluate(power(Word::generator(0), 2));
  auto inc = induced_h2_inclusion(d8, generated_subgroup(g, std::vector<std::uint32_t>{a2}));
  CHECK(inc.matrix.rows() == 1);
  auto j = homology_report(d8, nullptr);
  CHECK(j["h2"] == 3);
}

TEST_CASE("finite Dwyer check on small maps") {
  BarHomology z4(cyclic(4), 2), z2(cyclic(2), 2), z8(cyclic(8), 2);
  // Z_4 -> Z_2: H_1 iso, H_2 zero map.
  auto lcs = finite_dwyer_check(z4, z2, {0, 1, 0, 1}, 1, SeriesKind::lower_central);
  CHECK(lcs.hypothesis());
  CHECK(lcs.holds());
  CHECK(lcs.conclusion == std::vector<bool>{true, true});
  auto lcs2 = finite_dwyer_check(z4, z2, {0, 1, 0, 1}, 2, SeriesKind::lower_central);
  CHECK_FALSE(lcs2.h2_ok);
  CHECK_FALSE(lcs2.conclusion[2]);
  // Z_8 -> Z_4 at m = 2: quotients agree through level 3.
  std::vector<std::uint32_t> proj8{0, 1, 2, 3, 0, 1, 2, 3};
  auto z84 = finite_dwyer_check(z8, z4, proj8, 2, SeriesKind::lower_central);
  CHECK(z84.hypothesis());
  CHECK(z84.holds());
  auto [inj, surj] = finite_level_map(cyclic(8), cyclic(4), proj8, 2, 3, SeriesKind::derived);
  CHECK_FALSE(inj);
  CHECK(surj);
}
