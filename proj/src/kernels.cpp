#include "psolv/kernels.hpp"

#include <omp.h>

#include <algorithm>

#include "psolv/error.hpp"

namespace psolv::kernels {

// ---- row elimination -----------------------------------------------------

void eliminate_column_serial(std::span<Residue> data, std::size_t rows,
                             std::size_t cols, std::size_t pivot_row,
                             std::size_t col, PrimeField const& f) {
  Residue const* pivot = data.data() + pivot_row * cols;
  for (std::size_t i = 0; i < rows; ++i) {
    if (i == pivot_row) continue;
    Residue* r = data.data() + i * cols;
    Residue  c = r[col];
    if (!c) continue;
    for (std::size_t j = col; j < cols; ++j) r[j] = f.sub(r[j], f.mul(c, pivot[j]));
  }
}

void eliminate_column_omp(std::span<Residue> data, std::size_t rows,
                          std::size_t cols, std::size_t pivot_row,
                          std::size_t col, PrimeField const& f) {
  Residue const* pivot = data.data() + pivot_row * cols;
  std::uint64_t const p = f.p();
  auto const n = static_cast<std::int64_t>(rows);
#pragma omp parallel for schedule(static) if (rows * (cols - col) > 4096)
  for (std::int64_t i = 0; i < n; ++i) {
    if (static_cast<std::size_t>(i) == pivot_row) continue;
    Residue* r = data.data() + static_cast<std::size_t>(i) * cols;
    std::uint64_t const c = r[col];
    if (!c) continue;
    std::uint64_t const neg = p - c;
    for (std::size_t j = col; j < cols; ++j) {
      r[j] = static_cast<Residue>((r[j] + neg * pivot[j]) % p);
    }
  }
}

void eliminate_column_bits_serial(std::span<std::uint64_t> data,
                                  std::size_t rows, std::size_t wpr,
                                  std::size_t pivot_row, std::size_t col) {
  std::uint64_t const* pivot = data.data() + pivot_row * wpr;
  std::size_t const    w0    = col / 64;
  std::uint64_t const  bit   = std::uint64_t{1} << (col % 64);
  for (std::size_t i = 0; i < rows; ++i) {
    if (i == pivot_row) continue;
    std::uint64_t* r = data.data() + i * wpr;
    if (!(r[w0] & bit)) continue;
    for (std::size_t w = w0; w < wpr; ++w) r[w] ^= pivot[w];
  }
}

void eliminate_column_bits_omp(std::span<std::uint64_t> data,
                               std::size_t rows, std::size_t wpr,
                               std::size_t pivot_row, std::size_t col) {
  std::uint64_t const* pivot = data.data() + pivot_row * wpr;
  std::size_t const    w0    = col / 64;
  std::uint64_t const  bit   = std::uint64_t{1} << (col % 64);
  auto const n = static_cast<std::int64_t>(rows);
#pragma omp parallel for schedule(static) if (rows * (wpr - w0) > 8192)
  for (std::int64_t i = 0; i < n; ++i) {
    if (static_cast<std::size_t>(i) == pivot_row) continue;
    std::uint64_t* r = data.data() + static_cast<std::size_t>(i) * wpr;
    if (!(r[w0] & bit)) continue;
    for (std::size_t w = w0; w < wpr; ++w) r[w] ^= pivot[w];
  }
}

// ---- quotient extension --------------------------------------------------

namespace {

std::size_t checked_layer_size(std::uint32_t p, std::size_t d) {
  std::size_t size = 1;
  for (std::size_t i = 0; i < d; ++i) {
    if (size > (std::size_t{1} << 40) / p) throw CapExceeded("layer too large to enumerate");
    size *= p;
  }
  return size;
}

// v + s digitwise mod p, coordinate 0 most significant.
std::uint32_t add_layer(std::uint32_t v, std::vector<Residue> const& s,
                        std::uint32_t p) {
  std::uint32_t out = 0, weight = 1;
  for (std::size_t i = s.size(); i-- > 0;) {
    std::uint32_t digit = v % p;
    v /= p;
    out += ((digit + s[i]) % p) * weight;
    weight *= p;
  }
  return out;
}

std::uint32_t layer_mask(std::vector<Residue> const& s) {
  std::uint32_t m = 0;
  for (Residue x : s) m = (m << 1) | (x & 1u);
  return m;
}

}  // namespace

std::vector<Perm> extend_action_serial(ExtensionInput const& in) {
  auto const& old       = *in.old_action;
  std::size_t const k   = old.size();
  std::size_t const deg = k ? old.front().size() : 1;
  std::size_t const P   = checked_layer_size(in.p, in.layer_dim);
  std::vector<Perm> out(k, Perm(deg * P));
  for (std::size_t g = 0; g < k; ++g) {
    for (std::size_t c = 0; c < deg; ++c) {
      auto const&   s  = (*in.shift)[c * k + g];
      std::size_t   c2 = old[g][c];
      for (std::uint32_t v = 0; v < P; ++v) {
        out[g][c * P + v] = static_cast<std::uint32_t>(c2 * P + add_layer(v, s, in.p));
      }
    }
  }
  return out;
}

std::vector<Perm> extend_action_omp(ExtensionInput const& in) {
  auto const& old       = *in.old_action;
  std::size_t const k   = old.size();
  std::size_t const deg = k ? old.front().size() : 1;
  std::size_t const P   = checked_layer_size(in.p, in.layer_dim);
  std::vector<Perm> out(k, Perm(deg * P));
  auto const total = static_cast<std::int64_t>(k * deg);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t e = 0; e < total; ++e) {
    std::size_t const g  = static_cast<std::size_t>(e) / deg;
    std::size_t const c  = static_cast<std::size_t>(e) % deg;
    auto const&       s  = (*in.shift)[c * k + g];
    std::size_t const c2 = old[g][c];
    std::uint32_t* dst = out[g].data() + c * P;
    std::uint32_t const base = static_cast<std::uint32_t>(c2 * P);
    if (in.p == 2) {
      std::uint32_t const mask = layer_mask(s);
      for (std::uint32_t v = 0; v < P; ++v) dst[v] = base + (v ^ mask);
    } else {
      // Odometer over the digits of v, least significant last.
      std::vector<std::uint32_t> digits(in.layer_dim, 0);
      std::vector<std::uint32_t> weight(in.layer_dim, 1);
      for (std::size_t i = in.layer_dim; i-- > 1;) weight[i - 1] = weight[i] * in.p;
      std::uint32_t image = 0;
      for (std::size_t i = 0; i < in.layer_dim; ++i) image += s[i] % in.p * weight[i];
      for (std::uint32_t v = 0; v < P; ++v) {
        dst[v] = base + image;
        for (std::size_t i = in.layer_dim; i-- > 0;) {
          std::uint32_t const old_d = (digits[i] + s[i]) % in.p;
          if (++digits[i] < in.p) {
            std::uint32_t const new_d = (digits[i] + s[i]) % in.p;
            image = image - old_d * weight[i] + new_d * weight[i];
            break;
          }
          digits[i] = 0;
          image = image - old_d * weight[i] + (s[i] % in.p) * weight[i];
        }
      }
    }
  }
  return out;
}

std::vector<Perm> extend_action(ExtensionInput const& in, Exec exec) {
  return exec == Exec::serial ? extend_action_serial(in) : extend_action_omp(in);
}

// ---- relator rewriting ----------------------------------------------------

std::pair<Word, std::uint32_t> rewrite_from(Word const& w, std::uint32_t start,
                                            RewriteInput const& in) {
  std::vector<Letter> out;
  std::uint32_t c = start;
  for (Letter l : w) {
    if (l.exp > 0) {
      auto label = (*in.edge_label)[c * in.num_gens + l.gen];
      if (label >= 0) out.push_back({static_cast<std::uint32_t>(label), 1});
      c = (*in.action)[l.gen][c];
    } else {
      std::uint32_t prev = (*in.inverse)[l.gen][c];
      auto label = (*in.edge_label)[prev * in.num_gens + l.gen];
      if (label >= 0) out.push_back({static_cast<std::uint32_t>(label), -1});
      c = prev;
    }
  }
  return {Word(std::move(out)), c};
}

std::vector<Word> rewrite_relators_serial(RewriteInput const& in) {
  std::vector<Word> out;
  out.reserve(in.relators->size() * in.num_cosets);
  for (auto const& r : *in.relators) {
    for (std::uint32_t c = 0; c < in.num_cosets; ++c) {
      out.push_back(rewrite_from(r, c, in).first);
    }
  }
  return out;
}

std::vector<Word> rewrite_relators_omp(RewriteInput const& in) {
  std::size_t const n = in.relators->size() * in.num_cosets;
  std::vector<Word> out(n);
  auto const total = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t e = 0; e < total; ++e) {
    std::size_t const r = static_cast<std::size_t>(e) / in.num_cosets;
    auto const        c = static_cast<std::uint32_t>(static_cast<std::size_t>(e) % in.num_cosets);
    out[static_cast<std::size_t>(e)] = rewrite_from((*in.relators)[r], c, in).first;
  }
  return out;
}

std::vector<Word> rewrite_relators(RewriteInput const& in, Exec exec) {
  return exec == Exec::serial ? rewrite_relators_serial(in) : rewrite_relators_omp(in);
}

// ---- bar complex boundaries ----------------------------------------------

namespace {

void check_degree(int k) {
  if (k != 2 && k != 3) throw InvalidInput("bar boundary degree must be 2 or 3");
}

}  // namespace

std::vector<Triplet> bar_boundary_serial(std::span<std::uint32_t const> mul,
                                         std::size_t order, int k,
                                         PrimeField const& f) {
  check_degree(k);
  std::size_t const m   = order - 1;
  Residue const     one = 1, minus = f.neg(1);
  std::vector<Triplet> out;
  auto push = [&](std::size_t row, std::size_t col, Residue v) {
    out.push_back({static_cast<std::uint32_t>(row), static_cast<std::uint32_t>(col), v});
  };
  if (k == 2) {
    for (std::size_t a = 1; a < order; ++a) {
      for (std::size_t b = 1; b < order; ++b) {
        std::size_t col = (a - 1) * m + (b - 1);
        std::size_t ab  = mul[a * order + b];
        push(b - 1, col, one);
        if (ab) push(ab - 1, col, minus);
        push(a - 1, col, one);
      }
    }
    return out;
  }
  for (std::size_t a = 1; a < order; ++a) {
    for (std::size_t b = 1; b < order; ++b) {
      std::size_t ab = mul[a * order + b];
      for (std::size_t c = 1; c < order; ++c) {
        std::size_t col = ((a - 1) * m + (b - 1)) * m + (c - 1);
        std::size_t bc  = mul[b * order + c];
        push((b - 1) * m + (c - 1), col, one);
        if (ab) push((ab - 1) * m + (c - 1), col, minus);
        if (bc) push((a - 1) * m + (bc - 1), col, one);
        push((a - 1) * m + (b - 1), col, minus);
      }
    }
  }
  return out;
}

std::vector<Triplet> bar_boundary_omp(std::span<std::uint32_t const> mul,
                                      std::size_t order, int k,
                                      PrimeField const& f) {
  check_degree(k);
  std::size_t const m     = order - 1;
  std::size_t const slots = static_cast<std::size_t>(k) + 1;
  std::size_t cols = 1;
  for (int i = 0; i < k; ++i) cols *= m;
  Residue const one = 1, minus = f.neg(1);
  // Fixed slots per column; value 0 marks a dropped degenerate face.
  std::vector<Triplet> slot(cols * slots, Triplet{0, 0, 0});
  auto const total = static_cast<std::int64_t>(cols);
#pragma omp parallel for schedule(static)
  for (std::int64_t ci = 0; ci < total; ++ci) {
    auto const col = static_cast<std::size_t>(ci);
    Triplet* t = slot.data() + col * slots;
    auto set = [&](std::size_t i, std::size_t row, Residue v) {
      t[i] = {static_cast<std::uint32_t>(row), static_cast<std::uint32_t>(col), v};
    };
    if (k == 2) {
      std::size_t a = col / m + 1, b = col % m + 1;
      std::size_t ab = mul[a * order + b];
      set(0, b - 1, one);
      if (ab) set(1, ab - 1, minus);
      set(2, a - 1, one);
    } else {
      std::size_t a = col / (m * m) + 1, b = (col / m) % m + 1, c = col % m + 1;
      std::size_t ab = mul[a * order + b], bc = mul[b * order + c];
      set(0, (b - 1) * m + (c - 1), one);
      if (ab) set(1, (ab - 1) * m + (c - 1), minus);
      if (bc) set(2, (a - 1) * m + (bc - 1), one);
      set(3, (a - 1) * m + (b - 1), minus);
    }
  }
  std::vector<Triplet> out;
  out.reserve(slot.size());
  for (auto const& t : slot) {
    if (t.value) out.push_back(t);
  }
  return out;
}

std::vector<Triplet> bar_boundary(std::span<std::uint32_t const> mul,
                                  std::size_t order, int k,
                                  PrimeField const& f, Exec exec) {
  return exec == Exec::serial ? bar_boundary_serial(mul, order, k, f)
                              : bar_boundary_omp(mul, order, k, f);
}

// ---- verbal generators ----------------------------------------------------

namespace {

std::uint32_t power_of(std::span<std::uint32_t const> mul, std::size_t order,
                       std::uint32_t x, std::uint32_t p) {
  std::uint32_t y = 0;
  for (std::uint32_t i = 0; i < p; ++i) y = mul[y * order + x];
  return y;
}

}  // namespace

std::vector<std::uint8_t> verbal_values_serial(
    std::span<std::uint32_t const> mul, std::span<std::uint32_t const> inv,
    std::size_t order, std::span<std::uint32_t const> seeds,
    std::span<std::uint32_t const> partners, std::uint32_t p) {
  std::vector<std::uint8_t> mask(order, 0);
  for (auto x : seeds) {
    mask[power_of(mul, order, x, p)] = 1;
    for (auto y : partners) {
      std::uint32_t xy  = mul[x * order + y];
      std::uint32_t ixy = mul[inv[x] * order + inv[y]];
      mask[mul[ixy * order + xy]] = 1;
    }
  }
  return mask;
}

std::vector<std::uint8_t> verbal_values_omp(
    std::span<std::uint32_t const> mul, std::span<std::uint32_t const> inv,
    std::size_t order, std::span<std::uint32_t const> seeds,
    std::span<std::uint32_t const> partners, std::uint32_t p) {
  std::vector<std::uint8_t> mask(order, 0);
  auto const n = static_cast<std::int64_t>(seeds.size());
#pragma omp parallel
  {
    std::vector<std::uint8_t> local(order, 0);
#pragma omp for schedule(dynamic, 4) nowait
    for (std::int64_t i = 0; i < n; ++i) {
      auto const x = seeds[static_cast<std::size_t>(i)];
      local[power_of(mul, order, x, p)] = 1;
      std::uint32_t const ix = inv[x];
      for (auto y : partners) {
        std::uint32_t xy  = mul[x * order + y];
        std::uint32_t ixy = mul[ix * order + inv[y]];
        local[mul[ixy * order + xy]] = 1;
      }
    }
#pragma omp critical
    for (std::size_t e = 0; e < order; ++e) mask[e] |= local[e];
  }
  return mask;
}

std::vector<std::uint8_t> verbal_values(
    std::span<std::uint32_t const> mul, std::span<std::uint32_t const> inv,
    std::size_t order, std::span<std::uint32_t const> seeds,
    std::span<std::uint32_t const> partners, std::uint32_t p, Exec exec) {
  return exec == Exec::serial
             ? verbal_values_serial(mul, inv, order, seeds, partners, p)
             : verbal_values_omp(mul, inv, order, seeds, partners, p);
}

}  // namespace psolv::kernels
