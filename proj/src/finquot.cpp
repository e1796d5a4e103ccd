#include "psolv/finquot.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <unordered_map>

#include "psolv/error.hpp"
#include "psolv/kernels.hpp"

namespace psolv {

namespace {

struct PermHash {
  std::size_t operator()(Permutation const& p) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto x : p) h = (h ^ x) * 1099511628211ull;
    return h;
  }
};

std::vector<Letter> generator_letters(std::size_t k) {
  std::vector<Letter> out;
  for (std::uint32_t g = 0; g < k; ++g) out.push_back({g, 1});
  for (std::uint32_t g = 0; g < k; ++g) out.push_back({g, -1});
  return out;
}

bool transitive(std::vector<Permutation> const& gens, std::size_t degree) {
  std::vector<bool>         seen(degree, false);
  std::vector<std::uint32_t> stack{0};
  seen[0]           = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    auto c = stack.back();
    stack.pop_back();
    for (auto const& g : gens) {
      if (!seen[g[c]]) {
        seen[g[c]] = true;
        ++count;
        stack.push_back(g[c]);
      }
    }
  }
  return count == degree;
}

void check_permutation(Permutation const& p, std::size_t degree) {
  if (p.size() != degree) throw InvalidInput("permutations of different degrees");
  std::vector<bool> hit(degree, false);
  for (auto x : p) {
    if (x >= degree || hit[x]) throw InvalidInput("generator is not a permutation");
    hit[x] = true;
  }
}

Enumeration enumerate_permutations(std::vector<Permutation> const& gens,
                                   std::vector<Permutation> const& inverse,
                                   std::size_t degree, std::size_t cap) {
  Enumeration e;
  Permutation id(degree);
  std::iota(id.begin(), id.end(), 0u);
  std::unordered_map<Permutation, std::uint32_t, PermHash> index;
  index.emplace(id, 0);
  e.permutations.push_back(id);
  e.parent.push_back(0);
  e.letter.push_back({0, 0});
  e.bfs_order.push_back(0);
  auto const letters = generator_letters(gens.size());
  for (std::size_t head = 0; head < e.permutations.size(); ++head) {
    for (Letter l : letters) {
      auto const& g = l.exp > 0 ? gens[l.gen] : inverse[l.gen];
      Permutation next(degree);
      auto const& cur = e.permutations[head];
      for (std::size_t x = 0; x < degree; ++x) next[x] = g[cur[x]];
      if (index.contains(next)) continue;
      if (e.permutations.size() >= cap) {
        throw CapExceeded("group order exceeds cap " + std::to_string(cap));
      }
      auto id_new = static_cast<std::uint32_t>(e.permutations.size());
      index.emplace(next, id_new);
      e.permutations.push_back(std::move(next));
      e.parent.push_back(static_cast<std::uint32_t>(head));
      e.letter.push_back(l);
      e.bfs_order.push_back(id_new);
    }
  }
  e.order = e.permutations.size();
  return e;
}

}  // namespace

// ---- FiniteQuotient ----------------------------------------------------------

FiniteQuotient::FiniteQuotient(std::vector<Permutation> gens)
    : degree_(gens.empty() ? 1 : gens.front().size()), gens_(std::move(gens)) {
  if (degree_ == 0) throw InvalidInput("permutation degree must be positive");
  for (auto const& g : gens_) {
    check_permutation(g, degree_);
    inverse_.push_back(inverse_permutation(g));
  }
  // Regular iff transitive and of order equal to the degree.
  if (transitive(gens_, degree_) && degree_ <= kTableCap) {
    try {
      regular_ = enumerate_permutations(gens_, inverse_, degree_, degree_).order == degree_;
    } catch (CapExceeded const&) {
      regular_ = false;
    }
  }
}

FiniteQuotient FiniteQuotient::regular(std::vector<Permutation> gens) {
  std::size_t degree = gens.empty() ? 1 : gens.front().size();
  FiniteQuotient q(std::vector<Permutation>{});
  q.degree_ = degree;
  for (auto const& g : gens) {
    check_permutation(g, degree);
    q.inverse_.push_back(inverse_permutation(g));
  }
  q.gens_ = std::move(gens);
  if (!transitive(q.gens_, degree)) throw InvalidInput("quotient action is not transitive");
  q.regular_ = true;
  return q;
}

std::uint32_t FiniteQuotient::apply(std::uint32_t point, Word const& w) const {
  for (Letter l : w) point = act(point, l);
  return point;
}

std::uint64_t FiniteQuotient::element_order(Word const& w) const {
  if (regular_) {
    std::uint64_t k = 1;
    for (auto x = apply(0, w); x != 0; x = apply(x, w)) ++k;
    return k;
  }
  Permutation perm(degree_);
  for (std::uint32_t x = 0; x < degree_; ++x) perm[x] = apply(x, w);
  std::vector<bool> seen(degree_, false);
  std::uint64_t     order = 1;
  for (std::uint32_t x = 0; x < degree_; ++x) {
    if (seen[x]) continue;
    std::uint64_t len = 0;
    for (auto y = x; !seen[y]; y = perm[y]) {
      seen[y] = true;
      ++len;
    }
    order = std::lcm(order, len);
  }
  return order;
}

Word Enumeration::witness(std::uint32_t element) const {
  std::vector<Letter> rev;
  while (element != 0) {
    rev.push_back(letter[element]);
    element = parent[element];
  }
  std::reverse(rev.begin(), rev.end());
  return Word(std::move(rev));
}

Enumeration enumerate(FiniteQuotient const& q, std::size_t cap) {
  if (!q.known_regular()) {
    std::vector<Permutation> inverse;
    for (auto const& g : q.generators()) inverse.push_back(inverse_permutation(g));
    return enumerate_permutations(q.generators(), inverse, q.degree(), cap);
  }
  if (q.degree() > cap) {
    throw CapExceeded("group order " + std::to_string(q.degree()) + " exceeds cap "
                      + std::to_string(cap));
  }
  Enumeration e;
  e.order = q.degree();
  e.parent.assign(e.order, 0);
  e.letter.assign(e.order, Letter{0, 0});
  std::vector<bool> seen(e.order, false);
  seen[0] = true;
  e.bfs_order.reserve(e.order);
  e.bfs_order.push_back(0);
  auto const letters = generator_letters(q.num_generators());
  for (std::size_t head = 0; head < e.bfs_order.size(); ++head) {
    auto c = e.bfs_order[head];
    for (Letter l : letters) {
      auto next = q.act(c, l);
      if (seen[next]) continue;
      seen[next]     = true;
      e.parent[next] = c;
      e.letter[next] = l;
      e.bfs_order.push_back(next);
    }
  }
  return e;
}

// ---- FiniteGroup -------------------------------------------------------------

void FiniteGroup::finish() {
  inv_.assign(order_, 0);
  for (std::uint32_t a = 0; a < order_; ++a) {
    for (std::uint32_t b = 0; b < order_; ++b) {
      if (mul(a, b) == 0) {
        inv_[a] = b;
        break;
      }
    }
  }
}

FiniteGroup FiniteGroup::from_table(std::vector<std::uint32_t> table, std::size_t order) {
  if (order == 0 || table.size() != order * order) {
    throw InvalidInput("multiplication table must be order x order");
  }
  if (order > kTableCap) {
    throw CapExceeded("group order exceeds table cap " + std::to_string(kTableCap));
  }
  FiniteGroup g;
  g.order_ = order;
  g.table_ = std::move(table);
  for (std::uint32_t a = 0; a < order; ++a) {
    if (g.mul(0, a) != a || g.mul(a, 0) != a) {
      throw InvalidInput("element 0 is not the identity");
    }
    std::vector<bool> row(order, false), col(order, false);
    for (std::uint32_t b = 0; b < order; ++b) {
      auto x = g.mul(a, b), y = g.mul(b, a);
      if (x >= order || y >= order) throw InvalidInput("table entry out of range");
      if (row[x] || col[y]) throw InvalidInput("table is not a Latin square");
      row[x] = col[y] = true;
    }
  }
  // Light's associativity test over a generating set: (x y) c = x (y c)
  // for every generator c suffices.
  std::vector<std::uint32_t> gens;
  std::vector<bool>          reached(order, false);
  reached[0] = true;
  std::size_t                count = 1;
  for (std::uint32_t cand = 1; cand < order; ++cand) {
    if (reached[cand]) continue;
    gens.push_back(cand);
    std::vector<std::uint32_t> queue;
    for (std::uint32_t x = 0; x < order; ++x) {
      if (reached[x]) queue.push_back(x);
    }
    for (std::size_t h = 0; h < queue.size(); ++h) {
      for (auto c : gens) {
        auto y = g.mul(queue[h], c);
        if (!reached[y]) {
          reached[y] = true;
          ++count;
          queue.push_back(y);
        }
      }
    }
    if (count == order) break;
  }
  for (auto c : gens) {
    for (std::uint32_t x = 0; x < order; ++x) {
      for (std::uint32_t y = 0; y < order; ++y) {
        if (g.mul(g.mul(x, y), c) != g.mul(x, g.mul(y, c))) {
          throw InvalidInput("table is not associative: (" + std::to_string(x) + " "
                             + std::to_string(y) + ") " + std::to_string(c));
        }
      }
    }
  }
  g.finish();
  return g;
}

FiniteGroup FiniteGroup::from_quotient(FiniteQuotient const& q, std::size_t cap) {
  if (!q.known_regular()) return from_permutations(q.generators(), cap);
  auto e = enumerate(q, cap);
  std::size_t const n = e.order;
  FiniteGroup g;
  g.order_ = n;
  g.table_.assign(n * n, 0);
  // Column b holds x * b = x . g_b; g_b = g_parent . letter.
  for (std::uint32_t x = 0; x < n; ++x) g.table_[x * n] = x;
  for (std::size_t i = 1; i < n; ++i) {
    auto b   = e.bfs_order[i];
    auto par = e.parent[b];
    auto l   = e.letter[b];
    for (std::uint32_t x = 0; x < n; ++x) {
      g.table_[x * n + b] = q.act(g.table_[x * n + par], l);
    }
  }
  g.finish();
  for (std::size_t i = 0; i < q.num_generators(); ++i) {
    g.gens_.push_back(q.generators()[i][0]);
  }
  return g;
}

FiniteGroup FiniteGroup::from_permutations(std::vector<Permutation> gens, std::size_t cap) {
  std::size_t degree = gens.empty() ? 1 : gens.front().size();
  std::vector<Permutation> inverse;
  for (auto const& p : gens) {
    check_permutation(p, degree);
    inverse.push_back(inverse_permutation(p));
  }
  auto e = enumerate_permutations(gens, inverse, degree, cap);
  std::size_t const n = e.order;
  std::unordered_map<Permutation, std::uint32_t, PermHash> index;
  for (std::uint32_t i = 0; i < n; ++i) index.emplace(e.permutations[i], i);
  FiniteGroup g;
  g.order_ = n;
  g.table_.assign(n * n, 0);
  Permutation prod(degree);
  for (std::uint32_t a = 0; a < n; ++a) {
    for (std::uint32_t b = 0; b < n; ++b) {
      // Right actions: x.(ab) = (x.a).b
      auto const& pa = e.permutations[a];
      auto const& pb = e.permutations[b];
      for (std::size_t x = 0; x < degree; ++x) prod[x] = pb[pa[x]];
      g.table_[a * n + b] = index.at(prod);
    }
  }
  g.finish();
  for (auto const& p : gens) g.gens_.push_back(index.at(p));
  return g;
}

std::uint32_t FiniteGroup::power(std::uint32_t a, std::uint64_t k) const {
  std::uint32_t result = 0;
  while (k > 0) {
    if (k & 1) result = mul(result, a);
    a = mul(a, a);
    k >>= 1;
  }
  return result;
}

std::uint64_t FiniteGroup::element_order(std::uint32_t a) const {
  std::uint64_t k = 1;
  for (auto x = a; x != 0; x = mul(x, a)) ++k;
  return k;
}

std::uint32_t FiniteGroup::evaluate(Word const& w) const {
  std::uint32_t x = 0;
  for (Letter l : w) {
    if (l.gen >= gens_.size()) throw InvalidInput("word uses an unknown generator");
    x = mul(x, l.exp > 0 ? gens_[l.gen] : inv_[gens_[l.gen]]);
  }
  return x;
}

// ---- subsets --------------------------------------------------------------------

Subset subset_from_mask(std::vector<std::uint8_t> mask) {
  Subset s;
  for (std::uint32_t x = 0; x < mask.size(); ++x) {
    if (mask[x]) s.elements.push_back(x);
  }
  s.mask = std::move(mask);
  return s;
}

Subset whole_group(FiniteGroup const& g) {
  return subset_from_mask(std::vector<std::uint8_t>(g.order(), 1));
}

Subset trivial_subgroup(FiniteGroup const& g) {
  std::vector<std::uint8_t> mask(g.order(), 0);
  mask[0] = 1;
  return subset_from_mask(std::move(mask));
}

Subset generated_subgroup(FiniteGroup const& g, std::span<std::uint32_t const> gens) {
  std::vector<std::uint8_t>  mask(g.order(), 0);
  std::vector<std::uint32_t> elems{0};
  std::vector<std::uint32_t> chosen;
  mask[0] = 1;
  for (auto v : gens) {
    if (mask[v]) continue;
    chosen.push_back(v);
    // Old elements only need the new generator; new ones need all.
    std::size_t const old = elems.size();
    for (std::size_t i = 0; i < old; ++i) {
      auto y = g.mul(elems[i], v);
      if (!mask[y]) {
        mask[y] = 1;
        elems.push_back(y);
      }
    }
    for (std::size_t i = old; i < elems.size(); ++i) {
      for (auto c : chosen) {
        auto y = g.mul(elems[i], c);
        if (!mask[y]) {
          mask[y] = 1;
          elems.push_back(y);
        }
      }
    }
  }
  return subset_from_mask(std::move(mask));
}

Subset normal_closure(FiniteGroup const& g, std::span<std::uint32_t const> gens) {
  std::vector<std::uint8_t> conj(g.order(), 0);
  for (auto x : gens) {
    for (std::uint32_t h = 0; h < g.order(); ++h) {
      conj[g.mul(g.mul(g.inverse(h), x), h)] = 1;
    }
  }
  auto list = subset_from_mask(std::move(conj)).elements;
  return generated_subgroup(g, list);
}

bool is_subgroup(FiniteGroup const& g, Subset const& s) {
  if (s.mask.size() != g.order() || !s.contains(0)) return false;
  for (auto a : s.elements) {
    if (!s.contains(g.inverse(a))) return false;
    for (auto b : s.elements) {
      if (!s.contains(g.mul(a, b))) return false;
    }
  }
  return true;
}

bool is_normal(FiniteGroup const& g, Subset const& s) {
  if (!is_subgroup(g, s)) return false;
  std::vector<std::uint32_t> conj_by = g.generators();
  if (conj_by.empty()) {
    conj_by.resize(g.order());
    std::iota(conj_by.begin(), conj_by.end(), 0u);
  }
  for (auto h : conj_by) {
    for (auto x : s.elements) {
      if (!s.contains(g.mul(g.mul(g.inverse(h), x), h))) return false;
    }
  }
  return true;
}

std::vector<Subset> normal_subgroups(FiniteGroup const& g) {
  std::vector<Subset> found{trivial_subgroup(g)};
  auto add = [&](Subset s) {
    if (std::find(found.begin(), found.end(), s) != found.end()) return false;
    found.push_back(std::move(s));
    return true;
  };
  for (std::uint32_t x = 1; x < g.order(); ++x) {
    std::uint32_t one[] = {x};
    add(normal_closure(g, one));
  }
  // Close under joins; the join of normal subgroups is generated by the union.
  for (bool grew = true; grew;) {
    grew = false;
    std::size_t const n = found.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        std::vector<std::uint32_t> both = found[i].elements;
        both.insert(both.end(), found[j].elements.begin(), found[j].elements.end());
        grew |= add(generated_subgroup(g, both));
      }
    }
  }
  std::sort(found.begin(), found.end(), [](Subset const& a, Subset const& b) {
    return a.size() != b.size() ? a.size() < b.size() : a.elements < b.elements;
  });
  return found;
}

SubgroupGroup subgroup_group(FiniteGroup const& g, Subset const& s) {
  if (!is_subgroup(g, s)) throw InvalidInput("subset is not a subgroup");
  std::size_t const          n = s.size();
  std::vector<std::uint32_t> local(g.order(), 0);
  for (std::uint32_t i = 0; i < n; ++i) local[s.elements[i]] = i;
  std::vector<std::uint32_t> table(n * n);
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = 0; j < n; ++j) {
      table[i * n + j] = local[g.mul(s.elements[i], s.elements[j])];
    }
  }
  return {FiniteGroup::from_table(std::move(table), n), s.elements};
}

QuotientGroup quotient_group(FiniteGroup const& g, Subset const& normal) {
  if (!is_normal(g, normal)) throw InvalidInput("subgroup is not normal");
  std::vector<std::uint32_t> proj(g.order(), UINT32_MAX);
  std::vector<std::uint32_t> reps;
  for (std::uint32_t x = 0; x < g.order(); ++x) {
    if (proj[x] != UINT32_MAX) continue;
    auto id = static_cast<std::uint32_t>(reps.size());
    reps.push_back(x);
    for (auto h : normal.elements) proj[g.mul(x, h)] = id;
  }
  std::size_t const          n = reps.size();
  std::vector<std::uint32_t> table(n * n);
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = 0; j < n; ++j) table[i * n + j] = proj[g.mul(reps[i], reps[j])];
  }
  QuotientGroup q{FiniteGroup::from_table(std::move(table), n), std::move(proj)};
  for (auto x : g.generators()) q.group.gens_.push_back(q.projection[x]);
  return q;
}

// ---- verbal subgroups -------------------------------------------------------------

std::string to_string(SeriesKind k) {
  return k == SeriesKind::derived ? "derived" : "lcs";
}

SeriesKind series_kind_from_string(std::string const& s) {
  if (s == "derived" || s == "derived-p") return SeriesKind::derived;
  if (s == "lcs" || s == "lower-central" || s == "lower-central-p") {
    return SeriesKind::lower_central;
  }
  throw InvalidInput("unknown series kind '" + s + "' (expected derived or lcs)");
}

Subset verbal_closure(FiniteGroup const& g, Subset const& seeds, SeriesKind kind,
                      std::uint32_t p, Exec exec) {
  if (g.order() > kTableCap) {
    throw CapExceeded("verbal closure limited to order " + std::to_string(kTableCap));
  }
  std::vector<std::uint32_t> all;
  if (kind == SeriesKind::lower_central) {
    all.resize(g.order());
    std::iota(all.begin(), all.end(), 0u);
  }
  auto const& partners = kind == SeriesKind::derived ? seeds.elements : all;
  auto values = kernels::verbal_values(g.table(), g.inverses(), g.order(), seeds.elements,
                                       partners, p, exec);
  auto list   = subset_from_mask(std::move(values)).elements;
  auto result = generated_subgroup(g, list);
  if (is_normal(g, seeds) && !is_normal(g, result)) {
    throw Error("verbal closure of a normal subgroup is not normal");
  }
  return result;
}

std::vector<Subset> series_terms_brute(FiniteGroup const& g, std::uint32_t p,
                                       SeriesKind kind, Exec exec) {
  std::vector<Subset> terms{whole_group(g)};
  for (;;) {
    auto next = verbal_closure(g, terms.back(), kind, p, exec);
    if (next == terms.back()) break;
    terms.push_back(std::move(next));
  }
  return terms;
}

std::vector<std::size_t> quotient_series_brute(FiniteGroup const& g, std::uint32_t p,
                                               SeriesKind kind, Exec exec) {
  auto terms = series_terms_brute(g, p, kind, exec);
  std::vector<std::size_t> dims;
  for (std::size_t k = 0; k + 1 < terms.size(); ++k) {
    std::size_t index = terms[k].size() / terms[k + 1].size();
    std::size_t d     = 0;
    while (index % p == 0) {
      index /= p;
      ++d;
    }
    if (index != 1) throw InvalidInput("series index is not a power of p");
    dims.push_back(d);
  }
  return dims;
}

// ---- induced maps ---------------------------------------------------------------

InducedMap induced_map_flags(FiniteQuotient const& source, FiniteQuotient const& target,
                             std::vector<Word> const& images, std::size_t cap) {
  if (!source.known_regular() || !target.known_regular()) {
    throw InvalidInput("induced maps need regular quotients");
  }
  if (images.size() != source.num_generators()) {
    throw DimensionMismatch("one image word per source generator required");
  }
  if (source.degree() > cap || target.degree() > cap) {
    throw CapExceeded("quotient order exceeds cap " + std::to_string(cap));
  }
  // Permutations of the image words and their inverses on target points.
  std::vector<Permutation> fwd, bwd;
  for (auto const& w : images) {
    Permutation p(target.degree());
    for (std::uint32_t x = 0; x < target.degree(); ++x) p[x] = target.apply(x, w);
    bwd.push_back(inverse_permutation(p));
    fwd.push_back(std::move(p));
  }
  auto const e = enumerate(source, cap);
  InducedMap out;
  std::vector<std::uint32_t> f(e.order, 0);
  for (std::size_t i = 1; i < e.order; ++i) {
    auto x = e.bfs_order[i];
    auto l = e.letter[x];
    f[x]   = (l.exp > 0 ? fwd : bwd)[l.gen][f[e.parent[x]]];
  }
  for (std::uint32_t x = 0; x < e.order; ++x) {
    for (std::uint32_t g = 0; g < source.num_generators(); ++g) {
      if (f[source.act(x, Letter{g, 1})] != fwd[g][f[x]]) {
        out.failure = "generator " + std::to_string(g) + " at element "
                      + std::to_string(x) + ": images disagree";
        return out;
      }
    }
  }
  out.well_defined = true;
  std::vector<std::uint8_t> hit(target.degree(), 0);
  for (auto y : f) {
    if (!hit[y]) {
      hit[y] = 1;
      ++out.image_size;
    }
  }
  out.injective  = out.image_size == e.order;
  out.surjective = out.image_size == target.degree();
  out.map        = std::move(f);
  return out;
}

// ---- JSON ---------------------------------------------------------------------

nlohmann::json to_json(FiniteQuotient const& q) {
  return {{"degree", q.degree()}, {"gens", q.generators()}};
}

nlohmann::json to_json(FiniteGroup const& g) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t a = 0; a < g.order(); ++a) {
    rows.push_back(std::vector<std::uint32_t>(g.table().begin() + a * g.order(),
                                              g.table().begin() + (a + 1) * g.order()));
  }
  return {{"order", g.order()}, {"table", rows}};
}

FiniteGroup finite_group_from_json(nlohmann::json const& j) {
  try {
    auto rows = j.at("table").get<std::vector<std::vector<std::uint32_t>>>();
    std::size_t n = rows.size();
    if (j.contains("order") && j.at("order").get<std::size_t>() != n) {
      throw InvalidInput("\"order\" does not match the table");
    }
    std::vector<std::uint32_t> flat;
    flat.reserve(n * n);
    for (auto const& r : rows) {
      if (r.size() != n) throw InvalidInput("table rows must have length order");
      flat.insert(flat.end(), r.begin(), r.end());
    }
    return FiniteGroup::from_table(std::move(flat), n);
  } catch (nlohmann::json::exception const& e) {
    throw InvalidInput(std::string("bad group table JSON: ") + e.what());
  }
}

FiniteQuotient finite_quotient_from_json(nlohmann::json const& j) {
  try {
    auto gens = j.at("gens").get<std::vector<Permutation>>();
    if (j.contains("degree") && !gens.empty()
        && j.at("degree").get<std::size_t>() != gens.front().size()) {
      throw InvalidInput("\"degree\" does not match the permutations");
    }
    return FiniteQuotient(std::move(gens));
  } catch (nlohmann::json::exception const& e) {
    throw InvalidInput(std::string("bad permutation JSON: ") + e.what());
  }
}

}  // namespace psolv
