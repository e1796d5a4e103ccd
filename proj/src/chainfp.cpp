#include "psolv/chainfp.hpp"

#include <algorithm>

#include "psolv/error.hpp"

namespace psolv {

GroupRing::GroupRing(FiniteGroup gamma, std::uint32_t p)
    : gamma_(std::move(gamma)), field_(p) {}

bool GroupRing::is_p_group() const noexcept {
  std::size_t n = order();
  while (n % field_.p() == 0) n /= field_.p();
  return n == 1;
}

GroupRing::Element GroupRing::basis(std::uint32_t g) const {
  Element e(order(), 0);
  e[g] = 1;
  return e;
}

GroupRing::Element GroupRing::add(Element const& a, Element const& b) const {
  Element c(order());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = field_.add(a[i], b[i]);
  return c;
}

GroupRing::Element GroupRing::sub(Element const& a, Element const& b) const {
  Element c(order());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = field_.sub(a[i], b[i]);
  return c;
}

GroupRing::Element GroupRing::mul(Element const& a, Element const& b) const {
  Element c(order(), 0);
  for (std::uint32_t g = 0; g < order(); ++g) {
    if (a[g] == 0) continue;
    for (std::uint32_t h = 0; h < order(); ++h) {
      if (b[h] == 0) continue;
      auto gh = gamma_.mul(g, h);
      c[gh] = field_.add(c[gh], field_.mul(a[g], b[h]));
    }
  }
  return c;
}

Residue GroupRing::augment(Element const& a) const {
  Residue s = 0;
  for (auto x : a) s = field_.add(s, x);
  return s;
}

bool GroupRing::is_zero(Element const& a) const {
  return std::all_of(a.begin(), a.end(), [](Residue x) { return x == 0; });
}

RingMatrix zero_matrix(GroupRing const& r, std::size_t rows, std::size_t cols) {
  return {rows, cols, std::vector<GroupRing::Element>(rows * cols, r.zero())};
}

RingMatrix identity_matrix(GroupRing const& r, std::size_t n) {
  auto m = zero_matrix(r, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = r.one();
  return m;
}

RingMatrix multiply(GroupRing const& r, RingMatrix const& a, RingMatrix const& b) {
  if (a.cols != b.rows) {
    throw DimensionMismatch("ring matrix product " + std::to_string(a.rows) + "x"
                            + std::to_string(a.cols) + " by " + std::to_string(b.rows)
                            + "x" + std::to_string(b.cols));
  }
  auto c = zero_matrix(r, a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < a.cols; ++k) {
      if (r.is_zero(a.at(i, k))) continue;
      for (std::size_t j = 0; j < b.cols; ++j)
        c.at(i, j) = r.add(c.at(i, j), r.mul(a.at(i, k), b.at(k, j)));
    }
  return c;
}

bool is_zero(GroupRing const& r, RingMatrix const& m) {
  return std::all_of(m.entries.begin(), m.entries.end(),
                     [&](auto const& e) { return r.is_zero(e); });
}

FpMatrix flatten(GroupRing const& r, RingMatrix const& m) {
  std::size_t n = r.order();
  FpMatrix out(r.p(), m.rows * n, m.cols * n);
  auto const& gamma = r.gamma();
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) {
      auto const& a = m.at(i, j);
      for (std::uint32_t g = 0; g < n; ++g) {
        if (a[g] == 0) continue;
        for (std::uint32_t h = 0; h < n; ++h)
          out.set(i * n + gamma.mul(g, h), j * n + h, a[g]);
      }
    }
  return out;
}

FpMatrix augment(GroupRing const& r, RingMatrix const& m) {
  FpMatrix out(r.p(), m.rows, m.cols);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) out.set(i, j, r.augment(m.at(i, j)));
  return out;
}

FpGammaComplex::FpGammaComplex(GroupRing ring, std::vector<std::size_t> ranks,
                               std::vector<RingMatrix> boundaries)
    : ring_(std::move(ring)), ranks_(std::move(ranks)), boundaries_(std::move(boundaries)) {
  if (ranks_.empty()) throw InvalidInput("complex needs at least one module");
  if (boundaries_.size() != ranks_.size() - 1) {
    throw DimensionMismatch("expected " + std::to_string(ranks_.size() - 1)
                            + " boundary maps, got " + std::to_string(boundaries_.size()));
  }
  for (std::size_t q = 1; q < ranks_.size(); ++q) {
    auto const& d = boundaries_[q - 1];
    if (d.rows != ranks_[q - 1] || d.cols != ranks_[q]
        || d.entries.size() != d.rows * d.cols) {
      throw DimensionMismatch("d_" + std::to_string(q) + " has the wrong shape");
    }
    for (auto const& e : d.entries)
      if (e.size() != ring_.order())
        throw DimensionMismatch("d_" + std::to_string(q) + " entry has the wrong length");
  }
  for (std::size_t q = 1; q + 1 < ranks_.size(); ++q) {
    if (!is_zero(ring_, multiply(ring_, boundaries_[q - 1], boundaries_[q])))
      throw InvalidInput("d_" + std::to_string(q) + " d_" + std::to_string(q + 1) + " != 0");
  }
}

PlainComplex flatten(FpGammaComplex const& d) {
  PlainComplex c{d.ring().p(), {}, {}};
  for (auto k : d.ranks()) c.ranks.push_back(k * d.ring().order());
  for (auto const& m : d.boundaries()) c.boundaries.push_back(flatten(d.ring(), m));
  return c;
}

PlainComplex augment(FpGammaComplex const& d) {
  PlainComplex c{d.ring().p(), d.ranks(), {}};
  for (auto const& m : d.boundaries()) c.boundaries.push_back(augment(d.ring(), m));
  return c;
}

std::vector<std::size_t> homology_dims(PlainComplex const& c) {
  std::vector<std::size_t> rk(c.ranks.size() + 1, 0);  // rk[q] = rank d_q
  for (std::size_t q = 1; q < c.ranks.size(); ++q) rk[q] = rank(c.boundaries[q - 1]);
  std::vector<std::size_t> h(c.ranks.size());
  for (std::size_t q = 0; q < c.ranks.size(); ++q) h[q] = c.ranks[q] - rk[q] - rk[q + 1];
  return h;
}

std::vector<std::size_t> homology_dims(FpGammaComplex const& d) {
  return homology_dims(flatten(d));
}

FpGammaComplex attach_cells(FpGammaComplex const& d, std::size_t q,
                            std::vector<std::vector<GroupRing::Element>> const& cycles) {
  auto const& r = d.ring();
  auto ranks = d.ranks();
  auto bds = d.boundaries();
  if (q >= ranks.size()) throw InvalidInput("no degree " + std::to_string(q) + " to attach to");
  for (auto const& z : cycles) {
    if (z.size() != ranks[q]) throw DimensionMismatch("cycle has the wrong length");
    if (q > 0) {
      RingMatrix col{ranks[q], 1, z};
      if (!is_zero(r, multiply(r, bds[q - 1], col)))
        throw InvalidInput("attaching chain is not a cycle");
    }
  }
  if (q + 1 == ranks.size()) {
    ranks.push_back(0);
    bds.push_back(zero_matrix(r, ranks[q], 0));
  }
  auto const& old = bds[q];
  RingMatrix m = zero_matrix(r, old.rows, old.cols + cycles.size());
  for (std::size_t i = 0; i < old.rows; ++i) {
    for (std::size_t j = 0; j < old.cols; ++j) m.at(i, j) = old.at(i, j);
    for (std::size_t k = 0; k < cycles.size(); ++k) m.at(i, old.cols + k) = cycles[k][i];
  }
  bds[q] = std::move(m);
  ranks[q + 1] += cycles.size();
  // The next boundary gains zero rows for the new cells.
  if (q + 2 < ranks.size()) {
    auto const& up = bds[q + 1];
    RingMatrix m2 = zero_matrix(r, ranks[q + 1], up.cols);
    for (std::size_t i = 0; i < up.rows; ++i)
      for (std::size_t j = 0; j < up.cols; ++j) m2.at(i, j) = up.at(i, j);
    bds[q + 1] = std::move(m2);
  }
  return FpGammaComplex(r, std::move(ranks), std::move(bds));
}

// ---- verifiers ----------------------------------------------------------------

namespace {

void require_p_group(GroupRing const& r, char const* what) {
  if (!r.is_p_group()) {
    throw InvalidInput(std::string(what) + " needs a " + std::to_string(r.p())
                       + "-group; Gamma has order " + std::to_string(r.order()));
  }
}

}  // namespace

std::vector<RankInequalityRow> rank_inequality_check(FpGammaComplex const& d) {
  require_p_group(d.ring(), "rank inequality");
  auto h = homology_dims(d);
  auto hbar = homology_dims(augment(d));
  std::vector<RankInequalityRow> out;
  for (std::size_t q = 0; q < h.size(); ++q)
    out.push_back({q, h[q], d.ring().order() * hbar[q]});
  return out;
}

std::string to_string(StrebelVerdict v) {
  switch (v) {
    case StrebelVerdict::implication_holds: return "implication_holds";
    case StrebelVerdict::hypothesis_not_met: return "hypothesis_not_met";
    case StrebelVerdict::fails_not_p_group: return "fails_not_p_group";
    case StrebelVerdict::fails: return "fails";
  }
  return "?";
}

StrebelReport strebel_check(GroupRing const& r, RingMatrix const& f) {
  StrebelReport rep{};
  rep.augmented_injective = rank(augment(r, f)) == f.cols;
  auto flat = flatten(r, f);
  auto ker = kernel_basis(flat);
  rep.injective = ker.dim() == 0;
  if (!rep.injective) {
    auto v = ker.basis().row(0);
    auto lead = std::find_if(v.begin(), v.end(), [](Residue x) { return x != 0; });
    Residue s = r.field().inv(*lead);
    std::vector<GroupRing::Element> w(f.cols, r.zero());
    for (std::size_t j = 0; j < f.cols; ++j)
      for (std::size_t h = 0; h < r.order(); ++h)
        w[j][h] = r.field().mul(v[j * r.order() + h], s);
    rep.witness = std::move(w);
  }
  if (!rep.augmented_injective) rep.verdict = StrebelVerdict::hypothesis_not_met;
  else if (rep.injective) rep.verdict = StrebelVerdict::implication_holds;
  else if (!r.is_p_group()) rep.verdict = StrebelVerdict::fails_not_p_group;
  else rep.verdict = StrebelVerdict::fails;
  return rep;
}

MapRankReport map_rank_check(GroupRing const& r, RingMatrix const& f) {
  require_p_group(r, "map rank inequality");
  return {rank(flatten(r, f)), r.order() * rank(augment(r, f))};
}

AcyclicLiftReport acyclic_lift_check(FpGammaComplex const& d, std::size_t m) {
  require_p_group(d.ring(), "acyclic lift");
  auto h = homology_dims(d);
  auto hbar = homology_dims(augment(d));
  AcyclicLiftReport rep{m, {}, {}, true, true};
  for (std::size_t i = 0; i <= m; ++i) {
    std::size_t a = i < h.size() ? h[i] : 0;
    std::size_t b = i < hbar.size() ? hbar[i] : 0;
    rep.dims.push_back(a);
    rep.augmented_dims.push_back(b);
    rep.hypothesis = rep.hypothesis && b == 0;
    rep.conclusion = rep.conclusion && a == 0;
  }
  return rep;
}

// ---- random instances ------------------------------------------------------------

GroupRing::Element random_element(GroupRing const& r, std::mt19937_64& rng) {
  std::uniform_int_distribution<Residue> coef(0, r.p() - 1);
  GroupRing::Element e(r.order());
  for (auto& x : e) x = coef(rng);
  return e;
}

RingMatrix random_matrix(GroupRing const& r, std::size_t rows, std::size_t cols,
                         std::mt19937_64& rng) {
  RingMatrix m{rows, cols, {}};
  m.entries.reserve(rows * cols);
  for (std::size_t k = 0; k < rows * cols; ++k) m.entries.push_back(random_element(r, rng));
  return m;
}

std::pair<RingMatrix, RingMatrix> random_invertible(GroupRing const& r, std::size_t n,
                                                    std::mt19937_64& rng) {
  auto a = identity_matrix(r, n);
  auto b = identity_matrix(r, n);
  if (n < 2) {
    // Units g * c with c a nonzero scalar.
    if (n == 1) {
      std::uniform_int_distribution<std::uint32_t> pick(0, r.order() - 1);
      std::uniform_int_distribution<Residue> coef(1, r.p() - 1);
      auto g = pick(rng);
      auto c = coef(rng);
      a.at(0, 0) = r.zero();
      a.at(0, 0)[g] = c;
      b.at(0, 0) = r.zero();
      b.at(0, 0)[r.gamma().inverse(g)] = r.field().inv(c);
    }
    return {a, b};
  }
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  for (std::size_t step = 0; step < 2 * n; ++step) {
    auto i = idx(rng), j = idx(rng);
    if (i == j) continue;
    auto e = random_element(r, rng);
    // a <- a (I + e E_ij), b <- (I - e E_ij) b
    auto ea = identity_matrix(r, n);
    ea.at(i, j) = e;
    auto eb = identity_matrix(r, n);
    eb.at(i, j) = r.sub(r.zero(), e);
    a = multiply(r, a, ea);
    b = multiply(r, eb, b);
  }
  return {a, b};
}

namespace {

struct Piece {
  std::size_t              start;  // lowest degree
  std::vector<std::size_t> ranks;
  std::vector<RingMatrix>  maps;   // maps[i]: degree start+i+1 -> start+i
};

Piece cone_piece(GroupRing const& r, std::size_t q, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> sz(1, 2);
  auto k = sz(rng);
  return {q, {k, k}, {random_invertible(r, k, rng).first}};
}

FpGammaComplex assemble(GroupRing const& r, std::size_t top, std::vector<Piece> const& pieces,
                        std::mt19937_64& rng) {
  std::vector<std::size_t> ranks(top + 1, 0);
  std::vector<std::vector<std::size_t>> offset(pieces.size(),
                                               std::vector<std::size_t>(top + 1, 0));
  for (std::size_t k = 0; k < pieces.size(); ++k)
    for (std::size_t i = 0; i < pieces[k].ranks.size(); ++i) {
      auto q = pieces[k].start + i;
      offset[k][q] = ranks[q];
      ranks[q] += pieces[k].ranks[i];
    }
  std::vector<RingMatrix> bds;
  for (std::size_t q = 1; q <= top; ++q) bds.push_back(zero_matrix(r, ranks[q - 1], ranks[q]));
  for (std::size_t k = 0; k < pieces.size(); ++k)
    for (std::size_t i = 0; i < pieces[k].maps.size(); ++i) {
      auto q = pieces[k].start + i + 1;
      auto const& m = pieces[k].maps[i];
      for (std::size_t a = 0; a < m.rows; ++a)
        for (std::size_t b = 0; b < m.cols; ++b)
          bds[q - 1].at(offset[k][q - 1] + a, offset[k][q] + b) = m.at(a, b);
    }
  // Change of basis: d_q -> P_{q-1} d_q P_q^{-1}.
  std::vector<std::pair<RingMatrix, RingMatrix>> change;
  for (std::size_t q = 0; q <= top; ++q) change.push_back(random_invertible(r, ranks[q], rng));
  for (std::size_t q = 1; q <= top; ++q)
    bds[q - 1] = multiply(r, multiply(r, change[q - 1].first, bds[q - 1]), change[q].second);
  return FpGammaComplex(r, std::move(ranks), std::move(bds));
}

}  // namespace

FpGammaComplex random_complex(GroupRing const& r, std::size_t top, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> count(1, 4), sz(1, 2), kind(0, 3);
  std::uniform_int_distribution<std::size_t> deg(0, top);
  std::vector<Piece> pieces;
  auto n = count(rng);
  for (std::size_t k = 0; k < n; ++k) {
    auto t = kind(rng);
    if (t == 1 && top >= 1) {
      auto q = deg(rng) % top;
      auto a = sz(rng), b = sz(rng);
      pieces.push_back({q, {a, b}, {random_matrix(r, a, b, rng)}});
    } else if (t == 2 && top >= 2) {
      auto q = deg(rng) % (top - 1);
      auto a = sz(rng), b = sz(rng), c = sz(rng);
      auto A = random_matrix(r, a, b, rng);
      // Columns of B are random elements of the right kernel of A.
      auto ker = kernel_basis(flatten(r, A));
      RingMatrix B = zero_matrix(r, b, c);
      std::uniform_int_distribution<Residue> coef(0, r.p() - 1);
      for (std::size_t j = 0; j < c && ker.dim() > 0; ++j) {
        std::vector<Residue> v(b * r.order(), 0);
        for (std::size_t t2 = 0; t2 < ker.dim(); ++t2) {
          auto s = coef(rng);
          auto row = ker.basis().row(t2);
          for (std::size_t x = 0; x < v.size(); ++x)
            v[x] = r.field().add(v[x], r.field().mul(s, row[x]));
        }
        for (std::size_t i = 0; i < b; ++i)
          for (std::size_t h = 0; h < r.order(); ++h) B.at(i, j)[h] = v[i * r.order() + h];
      }
      pieces.push_back({q, {a, b, c}, {std::move(A), std::move(B)}});
    } else if (t == 3 && top >= 1) {
      pieces.push_back(cone_piece(r, deg(rng) % top, rng));
    } else {
      pieces.push_back({deg(rng), {sz(rng)}, {}});
    }
  }
  return assemble(r, top, pieces, rng);
}

FpGammaComplex random_acyclic_complex(GroupRing const& r, std::size_t top,
                                      std::mt19937_64& rng) {
  std::vector<Piece> pieces;
  if (top >= 1) {
    std::uniform_int_distribution<std::size_t> count(1, 3), deg(0, top - 1);
    auto n = count(rng);
    for (std::size_t k = 0; k < n; ++k) pieces.push_back(cone_piece(r, deg(rng), rng));
  }
  return assemble(r, top, pieces, rng);
}

// ---- JSON ----------------------------------------------------------------------

namespace {

nlohmann::json entries_json(GroupRing const& r, RingMatrix const& m) {
  auto out = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j)
      if (!r.is_zero(m.at(i, j))) out.push_back({i, j, m.at(i, j)});
  return out;
}

RingMatrix entries_from_json(GroupRing const& r, nlohmann::json const& entries,
                             std::size_t rows, std::size_t cols) {
  auto m = zero_matrix(r, rows, cols);
  for (auto const& e : entries) {
    auto i = e.at(0).get<std::size_t>();
    auto j = e.at(1).get<std::size_t>();
    auto coefs = e.at(2).get<std::vector<long long>>();
    if (i >= rows || j >= cols) throw DimensionMismatch("entry index out of range");
    if (coefs.size() != r.order())
      throw DimensionMismatch("coefficient vector must have length gamma_order");
    for (std::size_t g = 0; g < coefs.size(); ++g)
      m.at(i, j)[g] = r.field().add(m.at(i, j)[g], r.field().reduce(coefs[g]));
  }
  return m;
}

GroupRing ring_from_json(nlohmann::json const& j) {
  auto gamma = finite_group_from_json(
      {{"order", j.at("gamma_order")}, {"table", j.at("gamma_table")}});
  return GroupRing(std::move(gamma), j.at("p").get<std::uint32_t>());
}

nlohmann::json ring_json(GroupRing const& r) {
  auto g = to_json(r.gamma());
  return {{"p", r.p()}, {"gamma_order", r.order()}, {"gamma_table", g.at("table")}};
}

}  // namespace

nlohmann::json to_json(FpGammaComplex const& d) {
  auto j = ring_json(d.ring());
  j["ranks"] = d.ranks();
  auto bds = nlohmann::json::array();
  for (std::size_t q = 1; q <= d.boundaries().size(); ++q)
    bds.push_back({{"q", q}, {"entries", entries_json(d.ring(), d.boundaries()[q - 1])}});
  j["boundaries"] = bds;
  return j;
}

FpGammaComplex complex_from_json(nlohmann::json const& j) {
  try {
    auto r = ring_from_json(j);
    auto ranks = j.at("ranks").get<std::vector<std::size_t>>();
    if (ranks.empty()) throw InvalidInput("\"ranks\" is empty");
    std::vector<RingMatrix> bds;
    for (std::size_t q = 1; q < ranks.size(); ++q) bds.push_back(zero_matrix(r, ranks[q - 1], ranks[q]));
    for (auto const& b : j.value("boundaries", nlohmann::json::array())) {
      auto q = b.at("q").get<std::size_t>();
      if (q == 0 || q >= ranks.size()) throw InvalidInput("boundary degree out of range");
      bds[q - 1] = entries_from_json(r, b.at("entries"), ranks[q - 1], ranks[q]);
    }
    return FpGammaComplex(std::move(r), std::move(ranks), std::move(bds));
  } catch (nlohmann::json::exception const& e) {
    throw InvalidInput(std::string("bad complex JSON: ") + e.what());
  }
}

nlohmann::json to_json(GroupRing const& r, RingMatrix const& m) {
  auto j = ring_json(r);
  j["rows"] = m.rows;
  j["cols"] = m.cols;
  j["entries"] = entries_json(r, m);
  return j;
}

std::pair<GroupRing, RingMatrix> ring_matrix_from_json(nlohmann::json const& j) {
  try {
    auto r = ring_from_json(j);
    auto m = entries_from_json(r, j.at("entries"), j.at("rows").get<std::size_t>(),
                               j.at("cols").get<std::size_t>());
    return {std::move(r), std::move(m)};
  } catch (nlohmann::json::exception const& e) {
    throw InvalidInput(std::string("bad ring matrix JSON: ") + e.what());
  }
}

}  // namespace psolv
