#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "json.hpp"
#include "psolv/exec.hpp"

namespace psolv {

using Residue = std::uint32_t;

bool is_prime(std::uint64_t n);

// Arithmetic in F_p for p < 2^31.
class PrimeField {
 public:
  // Throws InvalidInput if p is not prime or too large.
  explicit PrimeField(std::uint32_t p);

  std::uint32_t p() const noexcept { return p_; }
  Residue reduce(long long x) const noexcept {
    long long r = x % static_cast<long long>(p_);
    return static_cast<Residue>(r < 0 ? r + p_ : r);
  }
  Residue add(Residue a, Residue b) const noexcept {
    Residue s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Residue sub(Residue a, Residue b) const noexcept {
    return a >= b ? a - b : a + p_ - b;
  }
  Residue neg(Residue a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Residue mul(Residue a, Residue b) const noexcept {
    return static_cast<Residue>(static_cast<std::uint64_t>(a) * b % p_);
  }
  Residue inv(Residue a) const;

 private:
  std::uint32_t p_;
};

// Dense row-major matrix over F_p.
class FpMatrix {
 public:
  FpMatrix(std::uint32_t p, std::size_t rows, std::size_t cols);
  static FpMatrix identity(std::uint32_t p, std::size_t n);
  // Entries are reduced mod p; all rows must have `cols` entries.
  static FpMatrix from_rows(std::uint32_t p,
                            std::vector<std::vector<long long>> const& rows,
                            std::size_t cols = 0);

  std::uint32_t p() const noexcept { return field_.p(); }
  PrimeField const& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Residue operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }
  void set(std::size_t i, std::size_t j, long long v) {
    data_[i * cols_ + j] = field_.reduce(v);
  }
  std::span<Residue const> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<Residue> row_mut(std::size_t i) {
    return {data_.data() + i * cols_, cols_};
  }
  std::vector<Residue> const& data() const noexcept { return data_; }
  std::span<Residue> mutable_data() noexcept { return data_; }

  void append_row(std::span<Residue const> r);
  FpMatrix transpose() const;
  FpMatrix take_rows(std::size_t n) const;
  bool is_zero() const;

  friend FpMatrix operator*(FpMatrix const& a, FpMatrix const& b);
  friend bool operator==(FpMatrix const& a, FpMatrix const& b) {
    return a.p() == b.p() && a.rows_ == b.rows_ && a.cols_ == b.cols_
           && a.data_ == b.data_;
  }

 private:
  PrimeField           field_;
  std::size_t          rows_;
  std::size_t          cols_;
  std::vector<Residue> data_;
};

// Row vector times matrix.
std::vector<Residue> mul_row(std::span<Residue const> v, FpMatrix const& m);

struct RrefResult {
  FpMatrix                 reduced;  // zero rows trimmed
  std::size_t              rank;
  std::vector<std::size_t> pivots;
};

// Reduced row echelon form.  For p = 2 this runs on a bit-packed copy.
RrefResult rref(FpMatrix const& m, Exec exec = Exec::parallel);
// Generic residue path regardless of p; kept public for cross-checking the
// bit-packed specialization.
RrefResult rref_generic(FpMatrix const& m, Exec exec = Exec::parallel);
std::size_t rank(FpMatrix const& m);

// A subspace of F_p^ambient, stored as its canonical rref basis so that
// equal subspaces compare equal.
class FpSubspace {
 public:
  FpSubspace(std::uint32_t p, std::size_t ambient);  // zero subspace
  static FpSubspace span(FpMatrix const& rows);
  static FpSubspace whole(std::uint32_t p, std::size_t ambient);

  std::uint32_t p() const noexcept { return basis_.p(); }
  std::size_t ambient() const noexcept { return basis_.cols(); }
  std::size_t dim() const noexcept { return basis_.rows(); }
  FpMatrix const& basis() const noexcept { return basis_; }
  std::vector<std::size_t> const& pivots() const noexcept { return pivots_; }

  bool contains(std::span<Residue const> v) const;
  // Subspace sum.
  FpSubspace operator+(FpSubspace const& other) const;
  bool is_subspace_of(FpSubspace const& other) const;

  friend bool operator==(FpSubspace const& a, FpSubspace const& b) {
    return a.basis_ == b.basis_;
  }

 private:
  FpSubspace(FpMatrix basis, std::vector<std::size_t> pivots)
      : basis_(std::move(basis)), pivots_(std::move(pivots)) {}
  FpMatrix                 basis_;
  std::vector<std::size_t> pivots_;
};

// {x : M x = 0}
FpSubspace kernel_basis(FpMatrix const& m);
// {y : y M = 0}
FpSubspace left_kernel_basis(FpMatrix const& m);
// Column space {M x}.
FpSubspace image_basis(FpMatrix const& m);
// Row space.
FpSubspace row_space(FpMatrix const& m);
// Some x with M x = v, or nullopt.
std::optional<std::vector<Residue>> solve(FpMatrix const& m,
                                          std::span<Residue const> v);
bool contains(FpSubspace const& s, std::span<Residue const> v);
std::size_t quotient_dim(std::size_t ambient, FpSubspace const& s);

// Quotient map F_p^n -> F_p^n / S realized on the non-pivot coordinates of
// S's rref basis.  Used for H_1 of presentations, module layers and
// coinvariants.
class QuotientMap {
 public:
  explicit QuotientMap(FpSubspace relations);

  std::size_t source_dim() const noexcept { return relations_.ambient(); }
  std::size_t dim() const noexcept { return free_cols_.size(); }
  std::uint32_t p() const noexcept { return relations_.p(); }
  FpSubspace const& relations() const noexcept { return relations_; }
  // Source coordinate represented by each quotient basis vector.
  std::vector<std::size_t> const& free_columns() const noexcept {
    return free_cols_;
  }

  std::vector<Residue> project(std::span<Residue const> v) const;
  // Image of the i-th standard basis vector of the source.
  std::vector<Residue> project_unit(std::size_t i) const;
  // Source-dimension x dim() matrix whose rows are the unit projections.
  FpMatrix matrix() const;

 private:
  FpSubspace               relations_;
  std::vector<std::size_t> free_cols_;
  std::vector<long>        quotient_index_;  // -1 for pivot columns
};

// ---- incremental echelon basis ----------------------------------------------
//
// A fully reduced basis grown one vector at a time.  Optionally tracks, for
// each stored row, its expression as a combination of tagged inputs, so that
// coordinates relative to the tagged vectors can be recovered.  For p = 2
// rows are bit-packed.
class EchelonBasis {
 public:
  EchelonBasis(std::uint32_t p, std::size_t ambient, std::size_t num_tags = 0);

  std::size_t dim() const noexcept { return pivots_.size(); }
  std::size_t ambient() const noexcept { return ambient_; }
  std::uint32_t p() const noexcept { return field_.p(); }

  // Inserts v; returns true if it was independent.  `tag` (< num_tags)
  // records v as that tagged input; untagged vectors have zero combination.
  bool insert(std::span<Residue const> v, std::optional<std::size_t> tag = {});
  // Inserts a sparse vector given as (index, value) pairs.
  bool insert_sparse(std::span<std::pair<std::uint32_t, Residue> const> v);

  bool contains(std::span<Residue const> v) const;
  // If v is in the span, the combination of tagged inputs (length num_tags)
  // it equals modulo untagged inputs.
  std::optional<std::vector<Residue>> tagged_coordinates(
      std::span<Residue const> v) const;

  FpSubspace subspace() const;

 private:
  bool insert_dense(std::vector<Residue> row, std::vector<Residue> combo);
  bool insert_bits(std::vector<std::uint64_t> row,
                   std::vector<std::uint64_t> combo);

  PrimeField               field_;
  std::size_t              ambient_;
  std::size_t              num_tags_;
  std::vector<std::size_t> pivots_;
  std::vector<long>        pivot_row_;  // column -> row index or -1
  // generic rows
  std::vector<std::vector<Residue>> rows_;
  std::vector<std::vector<Residue>> combos_;
  // p = 2 rows
  std::vector<std::vector<std::uint64_t>> brows_;
  std::vector<std::vector<std::uint64_t>> bcombos_;
};

// ---- sparse matrices --------------------------------------------------------

struct Triplet {
  std::uint32_t row;
  std::uint32_t col;
  Residue       value;
};

// Matrix given by (row, col, value) entries; duplicates are summed.
class SparseFpMatrix {
 public:
  SparseFpMatrix(std::uint32_t p, std::size_t rows, std::size_t cols);

  std::uint32_t p() const noexcept { return field_.p(); }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::vector<Triplet> const& entries() const noexcept { return entries_; }

  void add(std::size_t row, std::size_t col, long long value);
  void reserve(std::size_t n) { entries_.reserve(n); }
  FpMatrix to_dense() const;
  SparseFpMatrix transpose() const;

 private:
  PrimeField           field_;
  std::size_t          rows_;
  std::size_t          cols_;
  std::vector<Triplet> entries_;
};

// Structured elimination with Markowitz pivot choice.  Exact.
std::size_t sparse_rank(SparseFpMatrix const& m);
// Densifies when rows*cols is at most `dense_threshold`, else sparse_rank.
std::size_t rank(SparseFpMatrix const& m,
                 std::size_t dense_threshold = std::size_t{1} << 22);

// ---- JSON interchange -------------------------------------------------------

nlohmann::json to_json(FpMatrix const& m);
nlohmann::json to_json(SparseFpMatrix const& m);
// Accepts both the dense ("data") and sparse ("nnz") forms.
FpMatrix fp_matrix_from_json(nlohmann::json const& j);

}  // namespace psolv
