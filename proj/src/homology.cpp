#include "psolv/homology.hpp"

#include <algorithm>

#include "psolv/error.hpp"
#include "psolv/kernels.hpp"

namespace psolv {

namespace {

void check_cap(FiniteGroup const& g, std::size_t cap) {
  if (g.order() > cap) {
    throw CapExceeded("group order " + std::to_string(g.order())
                      + " exceeds the homology cap " + std::to_string(cap));
  }
}

SparseFpMatrix from_triplets(std::uint32_t p, std::size_t rows, std::size_t cols,
                             std::vector<Triplet> const& t) {
  SparseFpMatrix m(p, rows, cols);
  m.reserve(t.size());
  for (auto const& e : t) m.add(e.row, e.col, e.value);
  return m;
}

// Columns of a sparse matrix as (row, value) lists, duplicates summed and
// zeros dropped.
std::vector<std::vector<std::pair<std::uint32_t, Residue>>> columns(SparseFpMatrix const& m) {
  PrimeField f(m.p());
  std::vector<std::vector<std::pair<std::uint32_t, Residue>>> cols(m.cols());
  for (auto const& e : m.entries()) {
    auto& c  = cols[e.col];
    auto  it = std::find_if(c.begin(), c.end(), [&](auto const& x) { return x.first == e.row; });
    if (it == c.end()) {
      c.push_back({e.row, e.value});
    } else {
      it->second = f.add(it->second, e.value);
    }
  }
  for (auto& c : cols) {
    std::erase_if(c, [](auto const& x) { return x.second == 0; });
  }
  return cols;
}

// Term n of the brute-force series, indexed the way the series are:
// derived S^(n) with S^(0) = S, lower central S_{p,n} with S_{p,1} = S.
Subset series_term(FiniteGroup const& g, std::uint32_t p, SeriesKind kind, std::size_t n) {
  auto terms = series_terms_brute(g, p, kind);
  std::size_t i = kind == SeriesKind::derived ? n : (n == 0 ? 0 : n - 1);
  return terms[std::min(i, terms.size() - 1)];
}

FpSubspace kernel_filtration(BarHomology const& q, Subset const& normal) {
  auto quot = quotient_group(q.group(), normal);
  BarHomology target(quot.group, q.p(), std::max(q.group().order(), kHomologyCap));
  auto m = induced_h2(q, target, quot.projection);
  if (m.cols() == 0) return FpSubspace::whole(q.p(), q.h2());
  return left_kernel_basis(m);
}

}  // namespace

BarSlice bar_slice(FiniteGroup const& g, std::uint32_t p, std::size_t cap, Exec exec) {
  check_cap(g, cap);
  PrimeField        f(p);
  std::size_t const e = g.order() - 1;
  BarSlice s{p, g.order(), SparseFpMatrix(p, 1, e),
             from_triplets(p, e, e * e, kernels::bar_boundary(g.table(), g.order(), 2, f, exec)),
             from_triplets(p, e * e, e * e * e,
                           kernels::bar_boundary(g.table(), g.order(), 3, f, exec))};
  // d_2 d_3 = 0, one column of d_3 at a time.
  auto d2cols = columns(s.d2);
  auto d3cols = columns(s.d3);
  std::vector<Residue> acc(e, 0);
  for (std::size_t c = 0; c < d3cols.size(); ++c) {
    std::fill(acc.begin(), acc.end(), 0);
    for (auto [mid, x] : d3cols[c]) {
      for (auto [row, y] : d2cols[mid]) acc[row] = f.add(acc[row], f.mul(x, y));
    }
    if (std::any_of(acc.begin(), acc.end(), [](Residue r) { return r != 0; })) {
      throw Error("bar complex: d2 d3 != 0 at column " + std::to_string(c));
    }
  }
  return s;
}

std::size_t bar_h1(FiniteGroup const& g, std::uint32_t p, std::size_t cap) {
  check_cap(g, cap);
  PrimeField        f(p);
  std::size_t const e = g.order() - 1;
  auto d2 = from_triplets(p, e, e * e, kernels::bar_boundary(g.table(), g.order(), 2, f, Exec::parallel));
  return e - rank(d2);
}

std::size_t bar_h2(FiniteGroup const& g, std::uint32_t p, std::size_t cap) {
  auto s = bar_slice(g, p, cap);
  std::size_t const e = g.order() - 1;
  return e * e - rank(s.d2) - rank(s.d3);
}

// ---- BarHomology -------------------------------------------------------------

BarHomology::BarHomology(FiniteGroup g, std::uint32_t p, std::size_t cap, Exec exec)
    : group_(std::move(g)), p_(p), h1_basis_(p, 0), h2_basis_(p, 0), d2_(p, 0, 0) {
  auto              slice = bar_slice(group_, p, cap, exec);
  std::size_t const e     = group_.order() - 1;
  d2_                     = slice.d2.to_dense();

  // H_1 = C_1 / im d_2.
  h1_basis_ = EchelonBasis(p, e, e);
  for (auto const& col : columns(slice.d2)) {
    std::vector<Residue> v(e, 0);
    for (auto [row, x] : col) v[row] = x;
    h1_basis_.insert(v);
  }
  h1_tag_.assign(e, -1);
  for (std::size_t a = 0; a < e; ++a) {
    std::vector<Residue> v(e, 0);
    v[a] = 1;
    if (h1_basis_.insert(v, a)) {
      h1_tag_[a] = static_cast<long>(h1_reps_.size());
      h1_reps_.push_back(static_cast<std::uint32_t>(a + 1));
    }
  }

  // H_2 = ker d_2 / im d_3.  Boundaries are inserted until their span
  // reaches rank d_3.
  auto cycles   = kernel_basis(d2_);
  auto bdry_dim = rank(slice.d3);
  h2_basis_     = EchelonBasis(p, e * e, cycles.dim());
  for (auto const& col : columns(slice.d3)) {
    if (h2_basis_.dim() == bdry_dim) break;
    std::vector<Residue> v(e * e, 0);
    for (auto [row, x] : col) v[row] = x;
    h2_basis_.insert(v);
  }
  h2_tag_.assign(cycles.dim(), -1);
  for (std::size_t t = 0; t < cycles.dim(); ++t) {
    auto row = cycles.basis().row(t);
    if (h2_basis_.insert(row, t)) {
      h2_tag_[t] = static_cast<long>(h2_reps_.size());
      h2_reps_.emplace_back(row.begin(), row.end());
    }
  }
}

std::vector<Residue> BarHomology::h1_coordinates(std::span<Residue const> chain) const {
  auto tags = h1_basis_.tagged_coordinates(chain);
  if (!tags) throw Error("H_1 coordinates: chain outside C_1");
  std::vector<Residue> out(h1(), 0);
  for (std::size_t t = 0; t < tags->size(); ++t) {
    if ((*tags)[t]) out[static_cast<std::size_t>(h1_tag_[t])] = (*tags)[t];
  }
  return out;
}

std::vector<Residue> BarHomology::h2_coordinates(std::span<Residue const> cycle) const {
  auto boundary = mul_row(cycle, d2_.transpose());
  if (std::any_of(boundary.begin(), boundary.end(), [](Residue r) { return r != 0; })) {
    throw InvalidInput("H_2 coordinates: chain is not a cycle");
  }
  auto tags = h2_basis_.tagged_coordinates(cycle);
  if (!tags) throw Error("H_2 coordinates: cycle outside the computed span");
  std::vector<Residue> out(h2(), 0);
  for (std::size_t t = 0; t < tags->size(); ++t) {
    if ((*tags)[t]) out[static_cast<std::size_t>(h2_tag_[t])] = (*tags)[t];
  }
  return out;
}

// ---- induced maps ---------------------------------------------------------------

void check_homomorphism(FiniteGroup const& source, FiniteGroup const& target,
                        std::vector<std::uint32_t> const& image) {
  if (image.size() != source.order()) throw DimensionMismatch("one image per element required");
  for (auto y : image) {
    if (y >= target.order()) throw InvalidInput("image outside the target group");
  }
  for (std::uint32_t a = 0; a < source.order(); ++a) {
    for (std::uint32_t b = 0; b < source.order(); ++b) {
      if (image[source.mul(a, b)] != target.mul(image[a], image[b])) {
        throw InvalidInput("not a homomorphism: f(" + std::to_string(a) + " * "
                           + std::to_string(b) + ") != f(" + std::to_string(a) + ") * f("
                           + std::to_string(b) + ")");
      }
    }
  }
}

FpMatrix induced_h1(BarHomology const& source, BarHomology const& target,
                    std::vector<std::uint32_t> const& image) {
  std::size_t const e = target.group().order() - 1;
  FpMatrix m(source.p(), 0, target.h1());
  for (auto a : source.h1_representatives()) {
    std::vector<Residue> chain(e, 0);
    if (image[a] != 0) chain[image[a] - 1] = 1;
    m.append_row(target.h1_coordinates(chain));
  }
  return m;
}

FpMatrix induced_h2(BarHomology const& source, BarHomology const& target,
                    std::vector<std::uint32_t> const& image) {
  PrimeField        f(source.p());
  std::size_t const es = source.group().order() - 1;
  std::size_t const et = target.group().order() - 1;
  FpMatrix m(source.p(), 0, target.h2());
  for (auto const& z : source.h2_representatives()) {
    std::vector<Residue> pushed(et * et, 0);
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (!z[i]) continue;
      auto fa = image[i / es + 1];
      auto fb = image[i % es + 1];
      if (fa == 0 || fb == 0) continue;
      auto& slot = pushed[target.c2_index(fa, fb)];
      slot       = f.add(slot, z[i]);
    }
    m.append_row(target.h2_coordinates(pushed));
  }
  return m;
}

InclusionImage induced_h2_inclusion(BarHomology const& q, Subset const& n) {
  auto const& g = q.group();
  if (n.mask.size() != g.order() || !n.contains(0)) {
    throw InvalidInput("subset does not contain the identity");
  }
  for (auto a : n.elements) {
    for (auto b : n.elements) {
      if (!n.contains(g.mul(a, b))) {
        throw InvalidInput("not a subgroup: " + std::to_string(a) + " * " + std::to_string(b)
                           + " = " + std::to_string(g.mul(a, b)) + " is missing");
      }
    }
  }
  auto        sub = subgroup_group(g, n);
  BarHomology hn(sub.group, q.p(), std::max(g.order(), kHomologyCap));
  auto        m = induced_h2(hn, q, sub.embedding);
  return {m, m.rows() == 0 ? FpSubspace(q.p(), q.h2()) : row_space(m)};
}

H2Filtration dwyer_kernel(BarHomology const& q, std::size_t m) {
  if (m == 0) throw InvalidInput("the lower central series starts at m = 1");
  auto n = series_term(q.group(), q.p(), SeriesKind::lower_central, m);
  return {FiltrationKind::dwyer_kernel, m, q.h2(), kernel_filtration(q, n)};
}

H2Filtration derived_image_filtration(BarHomology const& q, std::size_t m) {
  auto n = series_term(q.group(), q.p(), SeriesKind::derived, m);
  return {FiltrationKind::derived_image, m, q.h2(), induced_h2_inclusion(q, n).image};
}

H2Filtration derived_kernel_filtration(BarHomology const& q, std::size_t m) {
  auto n = series_term(q.group(), q.p(), SeriesKind::derived, m);
  return {FiltrationKind::derived_kernel, m, q.h2(), kernel_filtration(q, n)};
}

nlohmann::json to_json(H2Filtration const& f) {
  char const* kind = f.kind == FiltrationKind::dwyer_kernel    ? "dwyer"
                     : f.kind == FiltrationKind::derived_image ? "derived-image"
                                                               : "derived-kernel";
  return {{"kind", kind},
          {"m", f.m},
          {"dim", f.subspace.dim()}};
}

nlohmann::json homology_report(BarHomology const& q, H2Filtration const* filtration) {
  nlohmann::json j{{"group_order", q.group().order()},
                   {"p", q.p()},
                   {"h1", q.h1()},
                   {"h2", q.h2()}};
  if (filtration) j["filtration"] = to_json(*filtration);
  return j;
}

// ---- finite Dwyer-type check ----------------------------------------------------

bool DwyerCheck::holds() const {
  if (!hypothesis()) return true;
  return std::all_of(conclusion.begin(), conclusion.end(), [](bool b) { return b; });
}

std::pair<bool, bool> finite_level_map(FiniteGroup const& a, FiniteGroup const& b,
                                       std::vector<std::uint32_t> const& image,
                                       std::uint32_t p, std::size_t n, SeriesKind kind) {
  auto an = series_term(a, p, kind, n);
  auto bn = series_term(b, p, kind, n);
  bool injective = true;
  for (std::uint32_t x = 0; x < a.order(); ++x) {
    if (bn.contains(image[x]) != an.contains(x)) {
      injective = false;
      break;
    }
  }
  auto proj = quotient_group(b, bn);
  std::vector<std::uint8_t> hit(proj.group.order(), 0);
  std::size_t hits = 0;
  for (auto y : image) {
    if (!hit[proj.projection[y]]) {
      hit[proj.projection[y]] = 1;
      ++hits;
    }
  }
  return {injective, hits == proj.group.order()};
}

DwyerCheck finite_dwyer_check(BarHomology const& a, BarHomology const& b,
                              std::vector<std::uint32_t> const& image, std::size_t m,
                              SeriesKind kind, bool mono) {
  check_homomorphism(a.group(), b.group(), image);
  auto h1 = induced_h1(a, b, image);
  auto r1 = rank(h1);
  DwyerCheck out{};
  out.h1_ok = r1 == a.h1() && (mono || r1 == b.h1());

  auto phi = kind == SeriesKind::lower_central ? dwyer_kernel(b, m)
                                               : derived_image_filtration(b, m);
  auto h2  = induced_h2(a, b, image);
  FpMatrix stacked(b.p(), 0, b.h2());
  for (std::size_t i = 0; i < h2.rows(); ++i) stacked.append_row(h2.row(i));
  for (std::size_t i = 0; i < phi.subspace.dim(); ++i) {
    stacked.append_row(phi.subspace.basis().row(i));
  }
  out.h2_ok = rank(stacked) == b.h2();

  for (std::size_t n = 1; n <= m + 1; ++n) {
    auto [inj, surj] = finite_level_map(a.group(), b.group(), image, a.p(), n, kind);
    out.conclusion.push_back(inj && (mono || surj));
  }
  return out;
}

}  // namespace psolv
