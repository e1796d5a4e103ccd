#include "psolv/fp_matrix.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "psolv/bit_matrix.hpp"
#include "psolv/error.hpp"
#include "psolv/kernels.hpp"

namespace psolv {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p >= (1u << 31) || !is_prime(p)) {
    throw InvalidInput("modulus " + std::to_string(p) + " is not a supported prime");
  }
}

Residue PrimeField::inv(Residue a) const {
  if (a == 0) throw InvalidInput("division by zero in F_p");
  // Fermat: a^(p-2).
  std::uint64_t result = 1, base = a, e = p_ - 2;
  while (e) {
    if (e & 1) result = result * base % p_;
    base = base * base % p_;
    e >>= 1;
  }
  return static_cast<Residue>(result);
}

// ---- FpMatrix ---------------------------------------------------------------

FpMatrix::FpMatrix(std::uint32_t p, std::size_t rows, std::size_t cols)
    : field_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

FpMatrix FpMatrix::identity(std::uint32_t p, std::size_t n) {
  FpMatrix m(p, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

FpMatrix FpMatrix::from_rows(std::uint32_t p,
                             std::vector<std::vector<long long>> const& rows,
                             std::size_t cols) {
  if (!rows.empty()) cols = rows.front().size();
  FpMatrix m(p, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw DimensionMismatch("ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

void FpMatrix::append_row(std::span<Residue const> r) {
  if (r.size() != cols_) throw DimensionMismatch("appended row has wrong length");
  for (Residue x : r) data_.push_back(x % p());
  ++rows_;
}

FpMatrix FpMatrix::transpose() const {
  FpMatrix t(p(), cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t.data_[j * rows_ + i] = (*this)(i, j);
  }
  return t;
}

FpMatrix FpMatrix::take_rows(std::size_t n) const {
  FpMatrix t(p(), n, cols_);
  std::copy(data_.begin(), data_.begin() + static_cast<std::ptrdiff_t>(n * cols_),
            t.data_.begin());
  return t;
}

bool FpMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](Residue x) { return x == 0; });
}

FpMatrix operator*(FpMatrix const& a, FpMatrix const& b) {
  if (a.cols() != b.rows() || a.p() != b.p()) {
    throw DimensionMismatch("matrix product dimensions");
  }
  FpMatrix c(a.p(), a.rows(), b.cols());
  std::uint64_t const p = a.p();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::vector<std::uint64_t> acc(b.cols(), 0);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      std::uint64_t x = a(i, k);
      if (!x) continue;
      auto brow = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) acc[j] = (acc[j] + x * brow[j]) % p;
    }
    for (std::size_t j = 0; j < b.cols(); ++j) c.data_[i * c.cols_ + j] = static_cast<Residue>(acc[j]);
  }
  return c;
}

std::vector<Residue> mul_row(std::span<Residue const> v, FpMatrix const& m) {
  if (v.size() != m.rows()) throw DimensionMismatch("row vector length");
  std::vector<std::uint64_t> acc(m.cols(), 0);
  std::uint64_t const p = m.p();
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (!v[k]) continue;
    auto r = m.row(k);
    for (std::size_t j = 0; j < m.cols(); ++j) acc[j] = (acc[j] + std::uint64_t{v[k]} * r[j]) % p;
  }
  return {acc.begin(), acc.end()};
}

// ---- rref -------------------------------------------------------------------

RrefResult rref_generic(FpMatrix const& m, Exec exec) {
  FpMatrix    r = m;
  auto const& f = m.field();
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
  std::span<Residue> data = r.mutable_data();
  for (std::size_t col = 0; col < r.cols() && rank < r.rows(); ++col) {
    std::size_t pr = rank;
    while (pr < r.rows() && r(pr, col) == 0) ++pr;
    if (pr == r.rows()) continue;
    if (pr != rank) {
      auto a = r.row_mut(pr), b = r.row_mut(rank);
      std::swap_ranges(a.begin(), a.end(), b.begin());
    }
    Residue s = f.inv(r(rank, col));
    for (auto& x : r.row_mut(rank)) x = f.mul(x, s);
    if (exec == Exec::serial) {
      kernels::eliminate_column_serial(data, r.rows(), r.cols(), rank, col, f);
    } else {
      kernels::eliminate_column_omp(data, r.rows(), r.cols(), rank, col, f);
    }
    pivots.push_back(col);
    ++rank;
  }
  return {r.take_rows(rank), rank, std::move(pivots)};
}

RrefResult rref(FpMatrix const& m, Exec exec) {
  if (m.p() != 2) return rref_generic(m, exec);
  BitMatrix b(m);
  auto pivots = b.rref_in_place(exec);
  FpMatrix full = b.to_fp();
  return {full.take_rows(pivots.size()), pivots.size(), std::move(pivots)};
}

std::size_t rank(FpMatrix const& m) { return rref(m).rank; }

// ---- FpSubspace -------------------------------------------------------------

FpSubspace::FpSubspace(std::uint32_t p, std::size_t ambient)
    : basis_(p, 0, ambient) {}

FpSubspace FpSubspace::span(FpMatrix const& rows) {
  auto r = rref(rows);
  return FpSubspace(std::move(r.reduced), std::move(r.pivots));
}

FpSubspace FpSubspace::whole(std::uint32_t p, std::size_t ambient) {
  return span(FpMatrix::identity(p, ambient));
}

bool FpSubspace::contains(std::span<Residue const> v) const {
  if (v.size() != ambient()) throw DimensionMismatch("vector length vs ambient");
  auto const& f = basis_.field();
  std::vector<Residue> r(v.begin(), v.end());
  for (auto& x : r) x %= f.p();
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    Residue c = r[pivots_[i]];
    if (!c) continue;
    auto b = basis_.row(i);
    for (std::size_t j = 0; j < r.size(); ++j) r[j] = f.sub(r[j], f.mul(c, b[j]));
  }
  return std::all_of(r.begin(), r.end(), [](Residue x) { return x == 0; });
}

FpSubspace FpSubspace::operator+(FpSubspace const& other) const {
  if (other.ambient() != ambient() || other.p() != p()) {
    throw DimensionMismatch("subspace sum of different ambients");
  }
  FpMatrix all = basis_;
  for (std::size_t i = 0; i < other.dim(); ++i) all.append_row(other.basis_.row(i));
  return span(all);
}

bool FpSubspace::is_subspace_of(FpSubspace const& other) const {
  for (std::size_t i = 0; i < dim(); ++i) {
    if (!other.contains(basis_.row(i))) return false;
  }
  return true;
}

FpSubspace kernel_basis(FpMatrix const& m) {
  auto r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : r.pivots) is_pivot[c] = true;
  auto const& f = m.field();
  FpMatrix k(m.p(), 0, m.cols());
  std::vector<Residue> v(m.cols());
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::fill(v.begin(), v.end(), 0);
    v[free] = 1;
    for (std::size_t i = 0; i < r.rank; ++i) v[r.pivots[i]] = f.neg(r.reduced(i, free));
    k.append_row(v);
  }
  return FpSubspace::span(k);
}

FpSubspace left_kernel_basis(FpMatrix const& m) { return kernel_basis(m.transpose()); }

FpSubspace image_basis(FpMatrix const& m) { return FpSubspace::span(m.transpose()); }

FpSubspace row_space(FpMatrix const& m) { return FpSubspace::span(m); }

std::optional<std::vector<Residue>> solve(FpMatrix const& m,
                                          std::span<Residue const> v) {
  if (v.size() != m.rows()) throw DimensionMismatch("right-hand side length");
  FpMatrix aug(m.p(), m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug.set(i, j, m(i, j));
    aug.set(i, m.cols(), v[i]);
  }
  auto r = rref(aug);
  std::vector<Residue> x(m.cols(), 0);
  for (std::size_t i = 0; i < r.rank; ++i) {
    if (r.pivots[i] == m.cols()) return std::nullopt;
    x[r.pivots[i]] = r.reduced(i, m.cols());
  }
  return x;
}

bool contains(FpSubspace const& s, std::span<Residue const> v) { return s.contains(v); }

std::size_t quotient_dim(std::size_t ambient, FpSubspace const& s) {
  if (s.ambient() != ambient) throw DimensionMismatch("ambient mismatch");
  return ambient - s.dim();
}

// ---- QuotientMap ------------------------------------------------------------

QuotientMap::QuotientMap(FpSubspace relations)
    : relations_(std::move(relations)),
      quotient_index_(relations_.ambient(), -1) {
  std::vector<bool> is_pivot(relations_.ambient(), false);
  for (auto c : relations_.pivots()) is_pivot[c] = true;
  for (std::size_t c = 0; c < relations_.ambient(); ++c) {
    if (!is_pivot[c]) {
      quotient_index_[c] = static_cast<long>(free_cols_.size());
      free_cols_.push_back(c);
    }
  }
}

std::vector<Residue> QuotientMap::project(std::span<Residue const> v) const {
  if (v.size() != source_dim()) throw DimensionMismatch("projection input length");
  auto const& basis = relations_.basis();
  auto const& f     = basis.field();
  std::vector<Residue> out(free_cols_.size());
  for (std::size_t k = 0; k < free_cols_.size(); ++k) out[k] = v[free_cols_[k]] % f.p();
  // The rref rows vanish on other pivots, so subtracting v[pivot] * row only
  // touches free columns.
  for (std::size_t i = 0; i < relations_.dim(); ++i) {
    Residue c = v[relations_.pivots()[i]] % f.p();
    if (!c) continue;
    auto row = basis.row(i);
    for (std::size_t k = 0; k < free_cols_.size(); ++k) {
      out[k] = f.sub(out[k], f.mul(c, row[free_cols_[k]]));
    }
  }
  return out;
}

std::vector<Residue> QuotientMap::project_unit(std::size_t i) const {
  std::vector<Residue> e(source_dim(), 0);
  e.at(i) = 1;
  return project(e);
}

FpMatrix QuotientMap::matrix() const {
  FpMatrix m(p(), 0, dim());
  for (std::size_t i = 0; i < source_dim(); ++i) m.append_row(project_unit(i));
  return m;
}

// ---- EchelonBasis -------------------------------------------------------------

namespace {

std::vector<std::uint64_t> pack(std::span<Residue const> v) {
  std::vector<std::uint64_t> out((v.size() + 63) / 64, 0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] & 1u) out[i / 64] |= std::uint64_t{1} << (i % 64);
  }
  return out;
}

bool bit(std::vector<std::uint64_t> const& w, std::size_t i) {
  return (w[i / 64] >> (i % 64)) & 1u;
}

void xor_into(std::vector<std::uint64_t>& a, std::vector<std::uint64_t> const& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] ^= b[i];
}

}  // namespace

EchelonBasis::EchelonBasis(std::uint32_t p, std::size_t ambient,
                           std::size_t num_tags)
    : field_(p), ambient_(ambient), num_tags_(num_tags), pivot_row_(ambient, -1) {}

bool EchelonBasis::insert(std::span<Residue const> v, std::optional<std::size_t> tag) {
  if (v.size() != ambient_) throw DimensionMismatch("echelon insert length");
  if (tag && *tag >= num_tags_) throw InvalidInput("echelon tag out of range");
  if (p() == 2) {
    std::vector<std::uint64_t> combo((num_tags_ + 63) / 64, 0);
    if (tag) combo[*tag / 64] |= std::uint64_t{1} << (*tag % 64);
    return insert_bits(pack(v), std::move(combo));
  }
  std::vector<Residue> row(v.begin(), v.end());
  for (auto& x : row) x %= p();
  std::vector<Residue> combo(num_tags_, 0);
  if (tag) combo[*tag] = 1;
  return insert_dense(std::move(row), std::move(combo));
}

bool EchelonBasis::insert_sparse(
    std::span<std::pair<std::uint32_t, Residue> const> v) {
  std::vector<Residue> dense(ambient_, 0);
  for (auto [i, x] : v) dense.at(i) = field_.add(dense.at(i), x % p());
  return insert(dense);
}

bool EchelonBasis::insert_dense(std::vector<Residue> row, std::vector<Residue> combo) {
  auto const& f = field_;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    Residue c = row[pivots_[i]];
    if (!c) continue;
    for (std::size_t j = 0; j < ambient_; ++j) row[j] = f.sub(row[j], f.mul(c, rows_[i][j]));
    for (std::size_t j = 0; j < num_tags_; ++j) combo[j] = f.sub(combo[j], f.mul(c, combos_[i][j]));
  }
  std::size_t lead = 0;
  while (lead < ambient_ && row[lead] == 0) ++lead;
  if (lead == ambient_) return false;
  Residue s = f.inv(row[lead]);
  for (auto& x : row) x = f.mul(x, s);
  for (auto& x : combo) x = f.mul(x, s);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    Residue c = rows_[i][lead];
    if (!c) continue;
    for (std::size_t j = 0; j < ambient_; ++j) rows_[i][j] = f.sub(rows_[i][j], f.mul(c, row[j]));
    for (std::size_t j = 0; j < num_tags_; ++j) combos_[i][j] = f.sub(combos_[i][j], f.mul(c, combo[j]));
  }
  pivot_row_[lead] = static_cast<long>(rows_.size());
  pivots_.push_back(lead);
  rows_.push_back(std::move(row));
  combos_.push_back(std::move(combo));
  return true;
}

bool EchelonBasis::insert_bits(std::vector<std::uint64_t> row,
                               std::vector<std::uint64_t> combo) {
  for (std::size_t i = 0; i < brows_.size(); ++i) {
    if (bit(row, pivots_[i])) {
      xor_into(row, brows_[i]);
      xor_into(combo, bcombos_[i]);
    }
  }
  std::size_t lead = ambient_;
  for (std::size_t w = 0; w < row.size(); ++w) {
    if (row[w]) {
      lead = w * 64 + static_cast<std::size_t>(std::countr_zero(row[w]));
      break;
    }
  }
  if (lead >= ambient_) return false;
  for (std::size_t i = 0; i < brows_.size(); ++i) {
    if (bit(brows_[i], lead)) {
      xor_into(brows_[i], row);
      xor_into(bcombos_[i], combo);
    }
  }
  pivot_row_[lead] = static_cast<long>(brows_.size());
  pivots_.push_back(lead);
  brows_.push_back(std::move(row));
  bcombos_.push_back(std::move(combo));
  return true;
}

bool EchelonBasis::contains(std::span<Residue const> v) const {
  if (num_tags_ == 0 && p() != 2) {
    std::vector<Residue> row(v.begin(), v.end());
    for (auto& x : row) x %= p();
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      Residue c = row[pivots_[i]];
      if (!c) continue;
      for (std::size_t j = 0; j < ambient_; ++j) row[j] = field_.sub(row[j], field_.mul(c, rows_[i][j]));
    }
    return std::all_of(row.begin(), row.end(), [](Residue x) { return x == 0; });
  }
  return tagged_coordinates(v).has_value();
}

std::optional<std::vector<Residue>> EchelonBasis::tagged_coordinates(
    std::span<Residue const> v) const {
  if (v.size() != ambient_) throw DimensionMismatch("echelon query length");
  std::vector<Residue> coords(num_tags_, 0);
  if (p() == 2) {
    auto row = pack(v);
    std::vector<std::uint64_t> combo((num_tags_ + 63) / 64, 0);
    for (std::size_t i = 0; i < brows_.size(); ++i) {
      if (bit(row, pivots_[i])) {
        xor_into(row, brows_[i]);
        xor_into(combo, bcombos_[i]);
      }
    }
    if (std::any_of(row.begin(), row.end(), [](std::uint64_t w) { return w != 0; })) {
      return std::nullopt;
    }
    for (std::size_t t = 0; t < num_tags_; ++t) coords[t] = bit(combo, t) ? 1 : 0;
    return coords;
  }
  auto const& f = field_;
  std::vector<Residue> row(v.begin(), v.end());
  for (auto& x : row) x %= p();
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    Residue c = row[pivots_[i]];
    if (!c) continue;
    for (std::size_t j = 0; j < ambient_; ++j) row[j] = f.sub(row[j], f.mul(c, rows_[i][j]));
    for (std::size_t t = 0; t < num_tags_; ++t) coords[t] = f.add(coords[t], f.mul(c, combos_[i][t]));
  }
  if (std::any_of(row.begin(), row.end(), [](Residue x) { return x != 0; })) {
    return std::nullopt;
  }
  return coords;
}

FpSubspace EchelonBasis::subspace() const {
  FpMatrix m(p(), 0, ambient_);
  std::vector<std::size_t> order(pivots_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return pivots_[a] < pivots_[b]; });
  std::vector<Residue> r(ambient_);
  for (auto i : order) {
    if (p() == 2) {
      for (std::size_t j = 0; j < ambient_; ++j) r[j] = bit(brows_[i], j);
      m.append_row(r);
    } else {
      m.append_row(rows_[i]);
    }
  }
  return FpSubspace::span(m);
}

// ---- SparseFpMatrix -----------------------------------------------------------

SparseFpMatrix::SparseFpMatrix(std::uint32_t p, std::size_t rows, std::size_t cols)
    : field_(p), rows_(rows), cols_(cols) {}

void SparseFpMatrix::add(std::size_t row, std::size_t col, long long value) {
  if (row >= rows_ || col >= cols_) throw DimensionMismatch("sparse entry out of range");
  Residue v = field_.reduce(value);
  if (v) {
    entries_.push_back({static_cast<std::uint32_t>(row),
                        static_cast<std::uint32_t>(col), v});
  }
}

FpMatrix SparseFpMatrix::to_dense() const {
  FpMatrix m(p(), rows_, cols_);
  for (auto const& t : entries_) m.set(t.row, t.col, static_cast<long long>(m(t.row, t.col)) + t.value);
  return m;
}

SparseFpMatrix SparseFpMatrix::transpose() const {
  SparseFpMatrix t(p(), cols_, rows_);
  t.entries_.reserve(entries_.size());
  for (auto const& e : entries_) t.entries_.push_back({e.col, e.row, e.value});
  return t;
}

std::size_t sparse_rank(SparseFpMatrix const& m) {
  using Entry = std::pair<std::uint32_t, Residue>;  // (col, value)
  PrimeField const f(m.p());

  std::vector<std::vector<Entry>> rows(m.rows());
  {
    std::vector<std::map<std::uint32_t, Residue>> acc(m.rows());
    for (auto const& t : m.entries()) {
      auto& slot = acc[t.row][t.col];
      slot       = f.add(slot, t.value);
    }
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (auto [c, v] : acc[i]) {
        if (v) rows[i].push_back({c, v});
      }
    }
  }

  std::vector<std::size_t>                col_count(m.cols(), 0);
  std::vector<std::vector<std::uint32_t>> col_rows(m.cols());
  std::set<std::pair<std::size_t, std::uint32_t>> queue;  // (nnz, row)
  for (std::uint32_t i = 0; i < rows.size(); ++i) {
    for (auto [c, v] : rows[i]) {
      ++col_count[c];
      col_rows[c].push_back(i);
    }
    queue.insert({rows[i].size(), i});
  }
  std::vector<bool> active(rows.size(), true);

  auto find = [](std::vector<Entry> const& r, std::uint32_t c) -> Residue {
    auto it = std::lower_bound(r.begin(), r.end(), Entry{c, 0},
                               [](Entry const& a, Entry const& b) { return a.first < b.first; });
    return (it != r.end() && it->first == c) ? it->second : 0;
  };

  std::size_t rank = 0;
  while (!queue.empty()) {
    auto [nnz, pr] = *queue.begin();
    queue.erase(queue.begin());
    active[pr] = false;
    auto const& prow = rows[pr];
    if (prow.empty()) continue;
    // Markowitz: shortest row, then its sparsest column.
    std::uint32_t pc = prow.front().first;
    for (auto [c, v] : prow) {
      if (col_count[c] < col_count[pc]) pc = c;
    }
    ++rank;
    for (auto [c, v] : prow) --col_count[c];
    Residue pinv = f.inv(find(prow, pc));

    std::vector<std::uint32_t> targets;
    for (auto r : col_rows[pc]) {
      if (active[r] && find(rows[r], pc)) targets.push_back(r);
    }
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    col_rows[pc].clear();

    for (auto r : targets) {
      auto&   row    = rows[r];
      Residue factor = f.mul(find(row, pc), pinv);
      queue.erase({row.size(), r});
      std::vector<Entry> merged;
      merged.reserve(row.size() + prow.size());
      std::size_t a = 0, b = 0;
      while (a < row.size() || b < prow.size()) {
        if (b == prow.size() || (a < row.size() && row[a].first < prow[b].first)) {
          merged.push_back(row[a++]);
        } else if (a == row.size() || prow[b].first < row[a].first) {
          std::uint32_t c = prow[b].first;
          merged.push_back({c, f.neg(f.mul(factor, prow[b].second))});
          ++col_count[c];
          col_rows[c].push_back(r);
          ++b;
        } else {
          Residue v = f.sub(row[a].second, f.mul(factor, prow[b].second));
          if (v) {
            merged.push_back({row[a].first, v});
          } else {
            --col_count[row[a].first];
          }
          ++a;
          ++b;
        }
      }
      row = std::move(merged);
      queue.insert({row.size(), r});
    }
  }
  return rank;
}

std::size_t rank(SparseFpMatrix const& m, std::size_t dense_threshold) {
  if (m.rows() * m.cols() <= dense_threshold) return rank(m.to_dense());
  return sparse_rank(m);
}

// ---- JSON ---------------------------------------------------------------------

nlohmann::json to_json(FpMatrix const& m) {
  return {{"p", m.p()}, {"rows", m.rows()}, {"cols", m.cols()}, {"data", m.data()}};
}

nlohmann::json to_json(SparseFpMatrix const& m) {
  nlohmann::json nnz = nlohmann::json::array();
  for (auto const& t : m.entries()) nnz.push_back({t.row, t.col, t.value});
  return {{"p", m.p()}, {"rows", m.rows()}, {"cols", m.cols()}, {"nnz", std::move(nnz)}};
}

FpMatrix fp_matrix_from_json(nlohmann::json const& j) {
  auto p    = j.at("p").get<std::uint32_t>();
  auto rows = j.at("rows").get<std::size_t>();
  auto cols = j.at("cols").get<std::size_t>();
  if (j.contains("data")) {
    auto data = j.at("data").get<std::vector<long long>>();
    if (data.size() != rows * cols) throw DimensionMismatch("matrix data length");
    FpMatrix m(p, rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t c = 0; c < cols; ++c) m.set(i, c, data[i * cols + c]);
    }
    return m;
  }
  SparseFpMatrix s(p, rows, cols);
  for (auto const& e : j.at("nnz")) {
    s.add(e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>(), e.at(2).get<long long>());
  }
  return s.to_dense();
}

}  // namespace psolv
