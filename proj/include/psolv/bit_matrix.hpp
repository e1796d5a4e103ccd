#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "psolv/exec.hpp"

namespace psolv {

class FpMatrix;

// Dense matrix over F_2 with rows packed into 64-bit words.
class BitMatrix {
 public:
  BitMatrix(std::size_t rows, std::size_t cols);
  explicit BitMatrix(FpMatrix const& m);  // m.p() must be 2

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t words_per_row() const noexcept { return wpr_; }

  bool get(std::size_t i, std::size_t j) const {
    return (data_[i * wpr_ + j / 64] >> (j % 64)) & 1u;
  }
  void set(std::size_t i, std::size_t j, bool v) {
    std::uint64_t& w   = data_[i * wpr_ + j / 64];
    std::uint64_t  bit = std::uint64_t{1} << (j % 64);
    w                  = v ? (w | bit) : (w & ~bit);
  }
  std::span<std::uint64_t> row(std::size_t i) {
    return {data_.data() + i * wpr_, wpr_};
  }
  std::span<std::uint64_t const> row(std::size_t i) const {
    return {data_.data() + i * wpr_, wpr_};
  }

  // In-place Gauss-Jordan; returns pivot columns.  Rows beyond the rank are
  // left zero.
  std::vector<std::size_t> rref_in_place(Exec exec = Exec::parallel);

  FpMatrix to_fp() const;

 private:
  std::size_t                rows_;
  std::size_t                cols_;
  std::size_t                wpr_;
  std::vector<std::uint64_t> data_;
};

}  // namespace psolv
