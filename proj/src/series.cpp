#include "psolv/series.hpp"

#include <cstdlib>
#include <numeric>

#include "psolv/cosets.hpp"
#include "psolv/error.hpp"
#include "psolv/kernels.hpp"

namespace psolv {

SeriesOptions options_from_env() {
  SeriesOptions opts;
  if (char const* env = std::getenv("PSOLV_MAX_ORDER"); env && *env) {
    try {
      std::size_t used = 0;
      opts.max_order   = std::stoull(env, &used);
      if (used != std::string(env).size() || opts.max_order == 0) throw std::invalid_argument("");
    } catch (std::exception const&) {
      throw InvalidInput(std::string("PSOLV_MAX_ORDER is not a positive integer: ") + env);
    }
  }
  return opts;
}

namespace {

std::vector<Residue> abelianize(Word const& w, std::size_t num_gens, PrimeField const& f) {
  std::vector<Residue> v(num_gens, 0);
  for (Letter l : w) v[l.gen] = f.add(v[l.gen], l.exp > 0 ? 1 : f.p() - 1);
  return v;
}

// Projection of every source unit vector.  Free columns map to units; a
// pivot column maps to minus its rref row restricted to free columns.
std::vector<std::vector<Residue>> unit_projections(QuotientMap const& q) {
  PrimeField f(q.p());
  std::vector<std::vector<Residue>> out(q.source_dim(), std::vector<Residue>(q.dim(), 0));
  for (std::size_t k = 0; k < q.dim(); ++k) out[q.free_columns()[k]][k] = 1;
  auto const& basis = q.relations().basis();
  for (std::size_t i = 0; i < basis.rows(); ++i) {
    auto& dst = out[q.relations().pivots()[i]];
    for (std::size_t k = 0; k < q.dim(); ++k) {
      dst[k] = f.neg(basis(i, q.free_columns()[k]));
    }
  }
  return out;
}

std::vector<Residue> combine(std::vector<Residue> const& coeffs,
                             std::vector<std::vector<Residue>> const& images,
                             std::size_t dim, PrimeField const& f) {
  std::vector<Residue> out(dim, 0);
  for (std::size_t s = 0; s < coeffs.size(); ++s) {
    if (!coeffs[s]) continue;
    for (std::size_t k = 0; k < dim; ++k) {
      out[k] = f.add(out[k], f.mul(coeffs[s], images[s][k]));
    }
  }
  return out;
}

std::optional<std::uint64_t> checked_order(std::uint64_t order, std::uint32_t p,
                                           std::size_t d, std::uint64_t cap) {
  for (std::size_t i = 0; i < d; ++i) {
    if (order > cap / p) return std::nullopt;
    order *= p;
  }
  if (order > cap) return std::nullopt;
  return order;
}

SeriesStage extend_with_layer(SeriesStage const& s, Layer const& layer,
                              SeriesOptions const& opts) {
  SeriesStage next = s;
  next.n           = s.n + 1;
  if (layer.w_dim == 0) {
    next.stabilized = true;
    next.layer_dims.push_back(0);
    next.indices.push_back(s.order());
    return next;
  }
  auto order = checked_order(s.order(), s.p, layer.w_dim, opts.max_order);
  if (!order) {
    throw SeriesExplosion("level " + std::to_string(s.n + 1) + " would have order "
                              + std::to_string(s.order()) + " * " + std::to_string(s.p)
                              + "^" + std::to_string(layer.w_dim) + ", above the cap "
                              + std::to_string(opts.max_order),
                          s, layer.w_dim);
  }
  kernels::ExtensionInput in{s.p, layer.w_dim, &s.quotient.generators(), &layer.shift};
  next.quotient = FiniteQuotient::regular(kernels::extend_action(in, opts.exec));
  next.layer_dims.push_back(layer.w_dim);
  next.indices.push_back(*order);
  next.action = layer.w_action;
  return next;
}

}  // namespace

// ---- H_1 ------------------------------------------------------------------

std::vector<Residue> H1ModP::classify(Word const& w) const {
  PrimeField f(projection.p());
  std::vector<Residue> out(dim, 0);
  for (Letter l : w) {
    auto row = projection.row(l.gen);
    for (std::size_t k = 0; k < dim; ++k) {
      out[k] = l.exp > 0 ? f.add(out[k], row[k]) : f.sub(out[k], row[k]);
    }
  }
  return out;
}

H1ModP h1_mod_p(Presentation const& g, std::uint32_t p) {
  PrimeField   f(p);
  std::size_t  k = g.num_generators();
  EchelonBasis rel(p, k);
  for (auto const& r : g.relators()) rel.insert(abelianize(r, k, f));
  QuotientMap q(rel.subspace());
  auto units = unit_projections(q);
  FpMatrix proj(p, 0, q.dim());
  for (auto const& u : units) proj.append_row(u);
  return {q.dim(), std::move(proj), q.free_columns()};
}

// ---- layers and stages -------------------------------------------------------

Layer compute_layer(Presentation const& g, FiniteQuotient const& q, SeriesKind kind,
                    std::uint32_t p, Exec exec) {
  PrimeField  f(p);
  std::size_t const k = g.num_generators();
  CosetTable  table(g, q.generators());
  auto        tr  = schreier_transversal(table);
  auto        sub = reidemeister_schreier(g, table, tr, exec);
  std::size_t const m = sub.schreier_generators().size();

  // V = H_1(K; F_p).
  EchelonBasis rel(p, m);
  for (auto const& r : sub.presentation().relators()) {
    if (!r.empty()) rel.insert(abelianize(r, m, f));
  }
  QuotientMap qv(rel.subspace());
  auto        v_units = unit_projections(qv);

  Layer layer;
  layer.v_dim = qv.dim();
  for (std::uint32_t gen = 0; gen < k; ++gen) {
    FpMatrix mg(p, 0, layer.v_dim);
    for (auto s : qv.free_columns()) {
      auto w = rewrite_in_subgroup(conjugate(sub.ambient_word(s), Word::generator(gen)), sub);
      mg.append_row(combine(abelianize(w, m, f), v_units, layer.v_dim, f));
    }
    layer.v_action.push_back(std::move(mg));
  }

  // W = V, or its coinvariants V / <v (M_g - I)>.
  EchelonBasis coinv(p, layer.v_dim);
  if (kind == SeriesKind::lower_central) {
    for (auto const& mg : layer.v_action) {
      for (std::size_t i = 0; i < layer.v_dim; ++i) {
        std::vector<Residue> row(mg.row(i).begin(), mg.row(i).end());
        row[i] = f.sub(row[i], 1);
        coinv.insert(row);
      }
    }
  }
  QuotientMap qw(coinv.subspace());
  auto        w_units = unit_projections(qw);
  layer.w_dim = qw.dim();
  for (auto const& mg : layer.v_action) {
    FpMatrix wg(p, 0, layer.w_dim);
    for (auto c : qw.free_columns()) {
      std::vector<Residue> row(mg.row(c).begin(), mg.row(c).end());
      wg.append_row(combine(row, w_units, layer.w_dim, f));
    }
    layer.w_action.push_back(std::move(wg));
  }

  // Edge shifts: the layer image of each Schreier generator.
  std::vector<std::vector<Residue>> sgen_image(m);
  for (std::size_t s = 0; s < m; ++s) sgen_image[s] = combine(v_units[s], w_units, layer.w_dim, f);
  layer.shift.assign(q.degree() * k, std::vector<Residue>(layer.w_dim, 0));
  for (std::uint32_t c = 0; c < q.degree(); ++c) {
    for (std::uint32_t gen = 0; gen < k; ++gen) {
      auto label = sub.label(c, gen);
      if (label >= 0) layer.shift[c * k + gen] = sgen_image[static_cast<std::size_t>(label)];
    }
  }
  return layer;
}

std::size_t kernel_h1_dim(Presentation const& g, FiniteQuotient const& q, std::uint32_t p,
                          Exec exec) {
  PrimeField  f(p);
  CosetTable  table(g, q.generators());
  auto        tr  = schreier_transversal(table);
  auto        sub = reidemeister_schreier(g, table, tr, exec);
  std::size_t const m = sub.schreier_generators().size();
  auto const& rels = sub.presentation().relators();
  SparseFpMatrix rel(p, rels.size(), m);
  for (std::size_t r = 0; r < rels.size(); ++r)
    for (Letter l : rels[r]) rel.add(r, l.gen, l.exp > 0 ? 1 : -1);
  return m - rank(rel);
}

SeriesStage initial_stage(Presentation const& g, SeriesKind kind, std::uint32_t p) {
  if (!is_prime(p)) throw InvalidInput("p must be prime, got " + std::to_string(p));
  SeriesStage s;
  s.kind     = kind;
  s.p        = p;
  s.n        = kind == SeriesKind::derived ? 0 : 1;
  s.quotient = FiniteQuotient::regular(std::vector<Permutation>(g.num_generators(), {0}));
  return s;
}

SeriesStage extend_stage(Presentation const& g, SeriesStage const& s, SeriesOptions const& opts) {
  if (s.stabilized) {
    SeriesStage next = s;
    ++next.n;
    return next;
  }
  // Size the layer before building it: the full layer needs dense
  // matrices of side dim H_1(K; F_p).
  auto v_dim = kernel_h1_dim(g, s.quotient, s.p, opts.exec);
  if (v_dim == 0) return extend_with_layer(s, Layer{}, opts);
  // For the lower central kind the layer is a nonzero quotient of V, so one
  // factor of p is certain.
  std::size_t certain = s.kind == SeriesKind::derived ? v_dim : 1;
  if (!checked_order(s.order(), s.p, certain, opts.max_order)) {
    throw SeriesExplosion("level " + std::to_string(s.n + 1) + " would have order at least "
                              + std::to_string(s.order()) + " * " + std::to_string(s.p) + "^"
                              + std::to_string(certain) + ", above the cap "
                              + std::to_string(opts.max_order),
                          s, certain);
  }
  if (v_dim > kDenseLayerCap) {
    throw SeriesExplosion("H_1 of the kernel at level " + std::to_string(s.n)
                              + " has dimension " + std::to_string(v_dim)
                              + ", above the dense layer limit " + std::to_string(kDenseLayerCap),
                          s, v_dim);
  }
  return extend_with_layer(s, compute_layer(g, s.quotient, s.kind, s.p, opts.exec), opts);
}

SeriesStage series_stage(Presentation const& g, std::uint32_t p, std::size_t n,
                         SeriesKind kind, SeriesOptions const& opts) {
  auto s = initial_stage(g, kind, p);
  if (n < s.n) throw InvalidInput("the lower central series starts at level 1");
  while (s.n < n) s = extend_stage(g, s, opts);
  return s;
}

SeriesStage derived_stage(Presentation const& g, std::uint32_t p, std::size_t n,
                          SeriesOptions const& opts) {
  return series_stage(g, p, n, SeriesKind::derived, opts);
}

SeriesStage lower_central_p_stage(Presentation const& g, std::uint32_t p, std::size_t n,
                                  SeriesOptions const& opts) {
  return series_stage(g, p, n, SeriesKind::lower_central, opts);
}

SeriesStage stabilized_derived_quotient(Presentation const& g, std::uint32_t p,
                                        SeriesOptions const& opts) {
  auto s = initial_stage(g, SeriesKind::derived, p);
  while (!s.stabilized) s = extend_stage(g, s, opts);
  return s;
}

std::vector<FpMatrix> const& conjugation_action(SeriesStage const& s) {
  if (s.layer_dims.empty()) throw InvalidInput("stage has no layer to act on");
  return s.action;
}

nlohmann::json to_json(SeriesStage const& s) {
  return {{"kind", to_string(s.kind)}, {"p", s.p},
          {"n", s.n},                  {"order", s.order()},
          {"layer_dims", s.layer_dims}, {"indices", s.indices},
          {"stabilized", s.stabilized}};
}

// ---- induced maps ---------------------------------------------------------

std::optional<std::string> validate_map_at_level(GroupMap const& phi,
                                                 FiniteQuotient const& target) {
  auto const& rels = phi.source().relators();
  for (std::size_t r = 0; r < rels.size(); ++r) {
    if (target.apply(0, phi.apply(rels[r])) != 0) {
      return "relator " + std::to_string(r) + " (" + format_word(rels[r], phi.source())
             + ") does not map to the identity";
    }
  }
  return std::nullopt;
}

namespace {

InducedMap level_flags(GroupMap const& phi, SeriesStage const& a, SeriesStage const& b,
                       SeriesOptions const& opts) {
  if (auto failure = validate_map_at_level(phi, b.quotient)) {
    InducedMap m;
    m.failure = *failure;
    return m;
  }
  std::size_t cap = std::max<std::uint64_t>(opts.max_order, std::max(a.order(), b.order()));
  return induced_map_flags(a.quotient, b.quotient, phi.images(), cap);
}

}  // namespace

LevelMap induced_quotient_map(GroupMap const& phi, std::uint32_t p, std::size_t n,
                              SeriesKind kind, SeriesOptions const& opts) {
  LevelMap out{series_stage(phi.source(), p, n, kind, opts),
               series_stage(phi.target(), p, n, kind, opts), {}};
  out.flags = level_flags(phi, out.source, out.target, opts);
  return out;
}

H1Map h1_map(GroupMap const& phi, std::uint32_t p) {
  auto     ha = h1_mod_p(phi.source(), p);
  auto     hb = h1_mod_p(phi.target(), p);
  FpMatrix m(p, 0, hb.dim);
  for (auto gen : ha.basis_generators) m.append_row(hb.classify(phi.images()[gen]));
  std::size_t r = rank(m);
  return {std::move(m), r, r == ha.dim, r == hb.dim};
}

std::string to_string(StallingsVerdict v) {
  switch (v) {
    case StallingsVerdict::consistent: return "consistent";
    case StallingsVerdict::hypothesis_not_met: return "hypothesis_not_met";
    case StallingsVerdict::conclusion_violated: return "conclusion_violated";
  }
  return "?";
}

StallingsReport stallings_report(GroupMap const& phi, std::uint32_t p, std::size_t n_max,
                                 SeriesKind kind, bool assume_h2_epi,
                                 SeriesOptions const& opts) {
  StallingsReport r{p, kind, assume_h2_epi, h1_map(phi, p), "", {}, std::nullopt,
                    StallingsVerdict::consistent};
  r.version = !r.h1.injective ? "none" : r.h1.surjective ? "iso" : "mono";
  auto sa   = initial_stage(phi.source(), kind, p);
  auto sb   = initial_stage(phi.target(), kind, p);
  bool ok   = true;
  bool valid = true;
  for (std::size_t n = sa.n; n <= n_max; ++n) {
    try {
      while (sa.n < n) sa = extend_stage(phi.source(), sa, opts);
      while (sb.n < n) sb = extend_stage(phi.target(), sb, opts);
    } catch (SeriesExplosion const& e) {
      r.truncated = e.what();
      break;
    }
    auto f = level_flags(phi, sa, sb, opts);
    r.levels.push_back({n, f.well_defined, f.injective, f.surjective, sa.order(), sb.order()});
    if (!f.well_defined) {
      valid     = false;
      r.truncated = "map not well defined at level " + std::to_string(n) + ": " + f.failure;
      break;
    }
    ok = ok && f.injective && (r.version == "mono" || f.surjective);
  }
  if (!valid || !r.h1.injective || !assume_h2_epi) {
    r.verdict = StallingsVerdict::hypothesis_not_met;
  } else {
    r.verdict = ok ? StallingsVerdict::consistent : StallingsVerdict::conclusion_violated;
  }
  return r;
}

nlohmann::json to_json(StallingsReport const& r) {
  nlohmann::json levels = nlohmann::json::array();
  for (auto const& l : r.levels) {
    levels.push_back({{"n", l.n},
                      {"well_defined", l.well_defined},
                      {"injective", l.injective},
                      {"surjective", l.surjective},
                      {"source_order", l.source_order},
                      {"target_order", l.target_order}});
  }
  nlohmann::json j{{"p", r.p},
                   {"kind", to_string(r.kind)},
                   {"assume_h2_epi", r.assume_h2_epi},
                   {"h1", {{"rank", r.h1.rank},
                           {"source_dim", r.h1.matrix.rows()},
                           {"target_dim", r.h1.matrix.cols()},
                           {"injective", r.h1.injective},
                           {"surjective", r.h1.surjective}}},
                   {"version", r.version},
                   {"levels", levels},
                   {"verdict", to_string(r.verdict)}};
  if (r.truncated) j["truncated"] = *r.truncated;
  return j;
}

IndependenceReport independence_check(Presentation const& b, std::vector<Word> const& elements,
                                      std::uint32_t p, std::size_t n,
                                      SeriesOptions const& opts) {
  auto     h1 = h1_mod_p(b, p);
  FpMatrix m(p, 0, h1.dim);
  for (auto const& w : elements) m.append_row(h1.classify(w));
  IndependenceReport r{};
  r.h1_rank           = rank(m);
  r.independent_in_h1 = r.h1_rank == elements.size();

  auto const& q = derived_stage(b, p, n, opts).quotient;
  std::vector<Permutation> perms;
  for (auto const& w : elements) {
    Permutation perm(q.degree());
    for (std::uint32_t x = 0; x < q.degree(); ++x) perm[x] = q.apply(x, w);
    perms.push_back(std::move(perm));
  }
  // In a regular action the orbit of point 0 is the generated subgroup.
  std::vector<bool>          seen(q.degree(), false);
  std::vector<std::uint32_t> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    auto x = stack.back();
    stack.pop_back();
    ++r.subgroup_order;
    for (auto const& perm : perms) {
      if (!seen[perm[x]]) {
        seen[perm[x]] = true;
        stack.push_back(perm[x]);
      }
    }
  }
  r.free_order = derived_stage(Presentation::anonymous(elements.size()), p, n, opts).order();
  r.injective  = r.free_order == r.subgroup_order;
  return r;
}

nlohmann::json to_json(IndependenceReport const& r) {
  return {{"independent_in_h1", r.independent_in_h1}, {"h1_rank", r.h1_rank},
          {"subgroup_order", r.subgroup_order},       {"free_order", r.free_order},
          {"injective", r.injective}};
}

// ---- growth -----------------------------------------------------------------

Ratio make_ratio(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw InvalidInput("zero denominator");
  auto g = std::gcd(num, den);
  return g == 0 ? Ratio{0, 1} : Ratio{num / g, den / g};
}

GrowthReport growth_statistics(Presentation const& g, std::uint32_t p, std::size_t n_max,
                               Ratio threshold, SeriesOptions const& opts) {
  GrowthReport r{p, {}, threshold, false, false, std::nullopt};
  auto s = initial_stage(g, SeriesKind::derived, p);
  for (std::size_t n = 1; n <= n_max; ++n) {
    // d_n comes from the level n-1 quotient; level n is only built when a
    // further ratio is wanted.
    auto d = kernel_h1_dim(g, s.quotient, p, opts.exec);
    r.levels.push_back({n, d, s.order(), make_ratio(d, s.order())});
    if (d == 0) {
      r.stabilized = true;
      break;
    }
    if (n == n_max) break;
    try {
      s = extend_stage(g, s, opts);
    } catch (SeriesExplosion const& e) {
      r.truncated = e.what();
      break;
    }
  }
  // a/b > c/d  <=>  a d > c b, computed without overflow.
  auto exceeds = [&](Ratio const& x) {
    return static_cast<unsigned __int128>(x.num) * threshold.den
           > static_cast<unsigned __int128>(threshold.num) * x.den;
  };
  r.linear_growth_evidence = !r.levels.empty();
  for (auto const& l : r.levels) r.linear_growth_evidence = r.linear_growth_evidence && exceeds(l.ratio);
  return r;
}

nlohmann::json to_json(GrowthReport const& r) {
  nlohmann::json levels = nlohmann::json::array();
  for (auto const& l : r.levels) {
    levels.push_back({{"n", l.n},
                      {"d", l.d},
                      {"index", l.index},
                      {"ratio", std::to_string(l.ratio.num) + "/" + std::to_string(l.ratio.den)},
                      {"ratio_value", l.ratio.value()}});
  }
  nlohmann::json j{{"p", r.p},
                   {"levels", levels},
                   {"threshold", std::to_string(r.threshold.num) + "/"
                                     + std::to_string(r.threshold.den)},
                   {"linear_growth_evidence", r.linear_growth_evidence},
                   {"stabilized", r.stabilized}};
  if (r.truncated) j["truncated"] = *r.truncated;
  return j;
}

}  // namespace psolv
