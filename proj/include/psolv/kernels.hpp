#pragma once

// Data-parallel inner loops.  Each kernel has a plain serial reference and an
// OpenMP version; the dispatchers pick one by Exec.  Both produce identical
// output, in identical order.

#include <cstdint>
#include <span>
#include <vector>

#include "psolv/exec.hpp"
#include "psolv/fp_matrix.hpp"
#include "psolv/word.hpp"

namespace psolv::kernels {

using Perm = std::vector<std::uint32_t>;

// ---- row elimination -----------------------------------------------------

// Clears column `col` in every row except `pivot_row`, whose entry at `col`
// must be 1.  `data` is rows x cols row-major.
void eliminate_column_serial(std::span<Residue> data, std::size_t rows,
                             std::size_t cols, std::size_t pivot_row,
                             std::size_t col, PrimeField const& f);
void eliminate_column_omp(std::span<Residue> data, std::size_t rows,
                          std::size_t cols, std::size_t pivot_row,
                          std::size_t col, PrimeField const& f);

// Same for packed F_2 rows of `wpr` words.
void eliminate_column_bits_serial(std::span<std::uint64_t> data,
                                  std::size_t rows, std::size_t wpr,
                                  std::size_t pivot_row, std::size_t col);
void eliminate_column_bits_omp(std::span<std::uint64_t> data,
                               std::size_t rows, std::size_t wpr,
                               std::size_t pivot_row, std::size_t col);

// ---- quotient extension --------------------------------------------------
//
// Old quotient acts on `old_degree` points; the new one on
// old_degree * p^layer_dim points, point (c, v) encoded as c * p^d + enc(v)
// with v's base-p digits, coordinate 0 most significant.  Generator g sends
// (c, v) to (c.g, v + shift[c][g]).

struct ExtensionInput {
  std::uint32_t                           p;
  std::size_t                             layer_dim;
  std::vector<Perm> const*                old_action;  // per generator
  // shift[c * num_gens + g] is the layer vector added on edge (c, g).
  std::vector<std::vector<Residue>> const* shift;
};

std::vector<Perm> extend_action_serial(ExtensionInput const& in);
std::vector<Perm> extend_action_omp(ExtensionInput const& in);
std::vector<Perm> extend_action(ExtensionInput const& in, Exec exec);

// ---- relator rewriting ----------------------------------------------------
//
// Reidemeister-Schreier rewriting of every relator starting at every coset.
// `edge_label[c * num_gens + g]` is the subgroup generator on edge (c, g) or
// -1 for a tree edge; `action[g]` is the coset permutation of generator g,
// `inverse[g]` its inverse.  Output index is r * num_cosets + c.

struct RewriteInput {
  std::vector<Word> const*          relators;
  std::vector<Perm> const*          action;
  std::vector<Perm> const*          inverse;
  std::vector<std::int64_t> const*  edge_label;
  std::size_t                       num_cosets;
  std::size_t                       num_gens;
};

std::vector<Word> rewrite_relators_serial(RewriteInput const& in);
std::vector<Word> rewrite_relators_omp(RewriteInput const& in);
std::vector<Word> rewrite_relators(RewriteInput const& in, Exec exec);

// Rewrites one word read from coset `start`; returns the word and the end
// coset.
std::pair<Word, std::uint32_t> rewrite_from(Word const& w, std::uint32_t start,
                                            RewriteInput const& in);

// ---- bar complex boundaries ----------------------------------------------
//
// Normalized inhomogeneous bar complex of a group with multiplication table
// `mul` (identity = element 0), trivial F_p coefficients.  Returns the
// boundary d_k : C_k -> C_{k-1} (k = 2 or 3) as triplets, one column per
// k-tuple of non-identity elements in lexicographic order.

std::vector<Triplet> bar_boundary_serial(std::span<std::uint32_t const> mul,
                                         std::size_t order, int k,
                                         PrimeField const& f);
std::vector<Triplet> bar_boundary_omp(std::span<std::uint32_t const> mul,
                                      std::size_t order, int k,
                                      PrimeField const& f);
std::vector<Triplet> bar_boundary(std::span<std::uint32_t const> mul,
                                  std::size_t order, int k,
                                  PrimeField const& f, Exec exec);

// ---- verbal generators ----------------------------------------------------
//
// Marks every value of the verbal forms over a seed set S inside a group with
// multiplication table `mul` and inverse table `inv`:
//   x^p for x in S, and [x, y] for x in S, y in `partners`.
// Returns a membership mask of length `order`.

std::vector<std::uint8_t> verbal_values_serial(
    std::span<std::uint32_t const> mul, std::span<std::uint32_t const> inv,
    std::size_t order, std::span<std::uint32_t const> seeds,
    std::span<std::uint32_t const> partners, std::uint32_t p);
std::vector<std::uint8_t> verbal_values_omp(
    std::span<std::uint32_t const> mul, std::span<std::uint32_t const> inv,
    std::size_t order, std::span<std::uint32_t const> seeds,
    std::span<std::uint32_t const> partners, std::uint32_t p);
std::vector<std::uint8_t> verbal_values(
    std::span<std::uint32_t const> mul, std::span<std::uint32_t const> inv,
    std::size_t order, std::span<std::uint32_t const> seeds,
    std::span<std::uint32_t const> partners, std::uint32_t p, Exec exec);

}  // namespace psolv::kernels
