#include <random>

#include "doctest.h"
#include "psolv/bit_matrix.hpp"
#include "psolv/error.hpp"
#include "psolv/fp_matrix.hpp"
#include "psolv/kernels.hpp"

using namespace psolv;

namespace {

FpMatrix random_matrix(std::uint32_t p, std::size_t r, std::size_t c, std::mt19937_64& rng,
                       double density = 1.0) {
  std::uniform_int_distribution<Residue> d(0, p - 1);
  std::bernoulli_distribution keep(density);
  FpMatrix m(p, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (keep(rng)) m.set(i, j, d(rng));
  return m;
}

// Low-rank matrix: product of r x k and k x c.
FpMatrix low_rank(std::uint32_t p, std::size_t r, std::size_t c, std::size_t k,
                  std::mt19937_64& rng) {
  return random_matrix(p, r, k, rng) * random_matrix(p, k, c, rng);
}

}  // namespace

TEST_CASE("prime field arithmetic") {
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 101u}) {
    PrimeField f(p);
    for (Residue a = 1; a < p; ++a) CHECK(f.mul(a, f.inv(a)) == 1);
    CHECK(f.reduce(-1) == p - 1);
  }
  CHECK_THROWS_AS(PrimeField(4), InvalidInput);
  CHECK_THROWS_AS(PrimeField(1), InvalidInput);
  CHECK(is_prime(2));
  CHECK_FALSE(is_prime(91));
}

TEST_CASE("rref: bit-packed, generic, serial and parallel agree") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 40; ++t) {
    std::uint32_t p = t % 2 ? 2 : (t % 3 ? 3 : 5);
    auto m = low_rank(p, 30 + t, 70 + 3 * t, 5 + t % 20, rng);
    auto a = rref(m, Exec::serial);
    auto b = rref(m, Exec::parallel);
    auto c = rref_generic(m, Exec::serial);
    auto d = rref_generic(m, Exec::parallel);
    CHECK(a.reduced == b.reduced);
    CHECK(a.reduced == c.reduced);
    CHECK(c.reduced == d.reduced);
    CHECK(a.pivots == c.pivots);
    CHECK(a.rank <= std::size_t(5 + t % 20));
  }
}

TEST_CASE("kernel, image and solve") {
  std::mt19937_64 rng(5);
  for (std::uint32_t p : {2u, 3u, 7u}) {
    auto m = low_rank(p, 12, 20, 6, rng);
    auto r = rank(m);
    auto k = kernel_basis(m);
    CHECK(k.dim() == 20 - r);
    for (std::size_t i = 0; i < k.dim(); ++i) {
      auto col = FpMatrix(p, 20, 1);
      for (std::size_t j = 0; j < 20; ++j) col.set(j, 0, k.basis()(i, j));
      CHECK((m * col).is_zero());
    }
    auto lk = left_kernel_basis(m);
    CHECK(lk.dim() == 12 - r);
    CHECK((lk.basis() * m).is_zero());
    CHECK(image_basis(m).dim() == r);
    CHECK(row_space(m).dim() == r);
    // M x = M y is solvable; some v outside the image is not.
    auto y = random_matrix(p, 20, 1, rng);
    auto v = m * y;
    auto x = solve(m, v.transpose().row(0));
    REQUIRE(x);
    FpMatrix xm(p, 20, 1);
    for (std::size_t j = 0; j < 20; ++j) xm.set(j, 0, (*x)[j]);
    CHECK(m * xm == v);
  }
  auto z = FpMatrix::from_rows(3, {{1, 0}, {0, 0}});
  std::vector<Residue> bad{0, 1};
  CHECK_FALSE(solve(z, bad));
}

TEST_CASE("subspaces are canonical") {
  std::mt19937_64 rng(3);
  auto m = random_matrix(3, 4, 9, rng);
  auto s1 = FpSubspace::span(m);
  // Row operations do not change the span.
  auto m2 = FpMatrix::from_rows(3, {{1, 1, 0, 0}, {0, 1, 0, 0}, {0, 0, 2, 1}, {0, 0, 0, 1}}) * m;
  CHECK(FpSubspace::span(m2) == s1);
  CHECK(s1.is_subspace_of(s1 + FpSubspace::whole(3, 9)));
  CHECK((s1 + FpSubspace(3, 9)) == s1);
  for (std::size_t i = 0; i < m.rows(); ++i) CHECK(s1.contains(m.row(i)));
}

TEST_CASE("quotient map kills relations") {
  auto rel = FpSubspace::span(FpMatrix::from_rows(5, {{1, 2, 0, 0}, {0, 0, 1, 4}}));
  QuotientMap q(rel);
  CHECK(q.dim() == 2);
  for (std::size_t i = 0; i < rel.dim(); ++i) {
    auto img = q.project(rel.basis().row(i));
    CHECK(std::all_of(img.begin(), img.end(), [](Residue x) { return x == 0; }));
  }
  // project is linear and agrees with project_unit.
  std::vector<Residue> v{3, 1, 4, 1};
  auto pv = q.project(v);
  std::vector<Residue> acc(q.dim(), 0);
  PrimeField f(5);
  for (std::size_t i = 0; i < 4; ++i) {
    auto u = q.project_unit(i);
    for (std::size_t k = 0; k < q.dim(); ++k) acc[k] = f.add(acc[k], f.mul(v[i], u[k]));
  }
  CHECK(pv == acc);
}

TEST_CASE("echelon basis recovers tagged coordinates") {
  std::mt19937_64 rng(9);
  for (std::uint32_t p : {2u, 3u}) {
    std::size_t const n = 40;
    EchelonBasis eb(p, n, 3);
    auto rels = random_matrix(p, 10, n, rng);
    for (std::size_t i = 0; i < rels.rows(); ++i) eb.insert(rels.row(i));
    auto tagged = random_matrix(p, 3, n, rng);
    for (std::size_t t = 0; t < 3; ++t) CHECK(eb.insert(tagged.row(t), t));
    // 2 t0 + t2 + relation
    PrimeField f(p);
    std::vector<Residue> v(n);
    for (std::size_t j = 0; j < n; ++j)
      v[j] = f.add(f.add(f.mul(2 % p, tagged(0, j)), tagged(2, j)), rels(4, j));
    auto c = eb.tagged_coordinates(v);
    REQUIRE(c);
    CHECK(*c == std::vector<Residue>{2 % p, 0, 1});
    CHECK(eb.subspace().dim() == eb.dim());
  }
}

TEST_CASE("sparse rank equals dense rank") {
  std::mt19937_64 rng(21);
  for (std::uint32_t p : {2u, 3u, 7u}) {
    for (int t = 0; t < 10; ++t) {
      auto d = random_matrix(p, 60, 80, rng, 0.05);
      SparseFpMatrix s(p, 60, 80);
      for (std::size_t i = 0; i < 60; ++i)
        for (std::size_t j = 0; j < 80; ++j)
          if (d(i, j)) s.add(i, j, d(i, j));
      CHECK(sparse_rank(s) == rank(d));
      CHECK(rank(s, 0) == rank(d));
    }
  }
  SparseFpMatrix dup(3, 1, 1);
  dup.add(0, 0, 1);
  dup.add(0, 0, 2);
  CHECK(sparse_rank(dup) == 0);
  CHECK(dup.to_dense().is_zero());
}

TEST_CASE("elimination kernels: serial and parallel agree") {
  std::mt19937_64 rng(4);
  PrimeField f(3);
  auto m = random_matrix(3, 50, 60, rng);
  for (std::size_t j = 0; j < 60; ++j) m.set(7, j, m(7, j));
  m.set(7, 5, 1);
  auto a = m.data(), b = m.data();
  kernels::eliminate_column_serial(a, 50, 60, 7, 5, f);
  kernels::eliminate_column_omp(b, 50, 60, 7, 5, f);
  CHECK(a == b);
  for (std::size_t i = 0; i < 50; ++i) CHECK(a[i * 60 + 5] == (i == 7 ? 1u : 0u));

  std::vector<std::uint64_t> bits(50 * 2);
  for (auto& w : bits) w = rng();
  bits[7 * 2] |= 1;  // pivot at column 0
  auto c = bits, d = bits;
  kernels::eliminate_column_bits_serial(c, 50, 2, 7, 0);
  kernels::eliminate_column_bits_omp(d, 50, 2, 7, 0);
  CHECK(c == d);
}

TEST_CASE("matrix JSON round trip") {
  auto m = FpMatrix::from_rows(5, {{1, 2, 3}, {4, 0, 1}});
  CHECK(fp_matrix_from_json(to_json(m)) == m);
  SparseFpMatrix s(5, 2, 3);
  s.add(1, 2, 4);
  CHECK(fp_matrix_from_json(to_json(s)) == s.to_dense());
  CHECK_THROWS_AS(FpMatrix::from_rows(2, {{1, 0}, {1}}), DimensionMismatch);
}
