#include "psolv/bit_matrix.hpp"

#include <algorithm>

#include "psolv/error.hpp"
#include "psolv/fp_matrix.hpp"
#include "psolv/kernels.hpp"

namespace psolv {

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), data_(rows * wpr_, 0) {}

BitMatrix::BitMatrix(FpMatrix const& m) : BitMatrix(m.rows(), m.cols()) {
  if (m.p() != 2) throw InvalidInput("BitMatrix needs p = 2");
  for (std::size_t i = 0; i < rows_; ++i) {
    auto r = m.row(i);
    for (std::size_t j = 0; j < cols_; ++j) {
      if (r[j]) data_[i * wpr_ + j / 64] |= std::uint64_t{1} << (j % 64);
    }
  }
}

std::vector<std::size_t> BitMatrix::rref_in_place(Exec exec) {
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols_ && rank < rows_; ++col) {
    std::size_t pr = rank;
    while (pr < rows_ && !get(pr, col)) ++pr;
    if (pr == rows_) continue;
    if (pr != rank) {
      auto a = row(pr), b = row(rank);
      std::swap_ranges(a.begin(), a.end(), b.begin());
    }
    if (exec == Exec::serial) {
      kernels::eliminate_column_bits_serial(data_, rows_, wpr_, rank, col);
    } else {
      kernels::eliminate_column_bits_omp(data_, rows_, wpr_, rank, col);
    }
    pivots.push_back(col);
    ++rank;
  }
  return pivots;
}

FpMatrix BitMatrix::to_fp() const {
  FpMatrix m(2, rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (get(i, j)) m.set(i, j, 1);
    }
  }
  return m;
}

}  // namespace psolv
