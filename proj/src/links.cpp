#include "psolv/links.hpp"

#include <algorithm>
#include <future>

#include "psolv/error.hpp"

namespace psolv {

void validate(CrossingList const& c) {
  auto const n = c.num_arcs;
  if (n == 0) throw InvalidInput("diagram has no arcs");
  std::vector<long> ends_at(n, -1), starts_at(n, -1);
  for (std::size_t k = 0; k < c.crossings.size(); ++k) {
    auto const& x = c.crossings[k];
    std::string at = "crossing " + std::to_string(k);
    if (x.over >= n || x.under_in >= n || x.under_out >= n)
      throw InvalidInput(at + " refers to a missing arc");
    if (x.sign != 1 && x.sign != -1) throw InvalidInput(at + " has sign other than +1/-1");
    if (ends_at[x.under_in] >= 0)
      throw InvalidInput("arc " + std::to_string(x.under_in) + " is under_in at crossings "
                         + std::to_string(ends_at[x.under_in]) + " and " + std::to_string(k));
    if (starts_at[x.under_out] >= 0)
      throw InvalidInput("arc " + std::to_string(x.under_out) + " is under_out at crossings "
                         + std::to_string(starts_at[x.under_out]) + " and "
                         + std::to_string(k));
    ends_at[x.under_in] = static_cast<long>(k);
    starts_at[x.under_out] = static_cast<long>(k);
  }
  std::vector<int> seen(n, 0);
  for (std::size_t ci = 0; ci < c.components.size(); ++ci) {
    auto const& comp = c.components[ci];
    std::string at = "component " + std::to_string(ci);
    if (comp.empty()) throw InvalidInput(at + " is empty");
    for (auto a : comp) {
      if (a >= n) throw InvalidInput(at + " refers to a missing arc");
      if (seen[a]++) throw InvalidInput("arc " + std::to_string(a) + " is listed twice");
    }
    if (comp.size() == 1 && ends_at[comp[0]] < 0) {
      if (starts_at[comp[0]] >= 0)
        throw InvalidInput("arc " + std::to_string(comp[0]) + " starts at a crossing but never ends");
      continue;  // crossingless circle
    }
    for (std::size_t i = 0; i < comp.size(); ++i) {
      auto a = comp[i], next = comp[(i + 1) % comp.size()];
      if (ends_at[a] < 0)
        throw InvalidInput("arc " + std::to_string(a) + " of " + at + " does not end at a crossing");
      auto const& x = c.crossings[static_cast<std::size_t>(ends_at[a])];
      if (x.under_out != next)
        throw InvalidInput("arc " + std::to_string(a) + " continues as arc "
                           + std::to_string(x.under_out) + ", but " + at + " lists "
                           + std::to_string(next));
    }
  }
  for (std::size_t a = 0; a < n; ++a)
    if (!seen[a]) throw InvalidInput("arc " + std::to_string(a) + " is in no component");
}

Presentation wirtinger(CrossingList const& c) {
  validate(c);
  std::vector<std::string> names;
  for (std::size_t a = 0; a < c.num_arcs; ++a) names.push_back("a" + std::to_string(a));
  std::vector<Word> rels;
  for (std::size_t k = 0; k + 1 < c.crossings.size(); ++k) {
    auto const& x = c.crossings[k];
    auto s = static_cast<std::int8_t>(x.sign);
    Word r({Letter{x.under_out, -1}, Letter{x.over, static_cast<std::int8_t>(-s)},
            Letter{x.under_in, 1}, Letter{x.over, s}});
    if (!r.empty()) rels.push_back(std::move(r));
  }
  return Presentation(std::move(names), std::move(rels));
}

CrossingList unknot_diagram() { return {1, {}, {{0}}}; }

CrossingList trefoil_diagram() {
  return {3, {{2, 0, 1, 1}, {0, 1, 2, 1}, {1, 2, 0, 1}}, {{0, 1, 2}}};
}

CrossingList figure_eight_diagram() {
  // Crossing j: arc j ends, arc j+1 starts, arc j+2 passes over.
  CrossingList c{4, {}, {{0, 1, 2, 3}}};
  int const signs[4] = {1, -1, 1, -1};
  for (std::uint32_t j = 0; j < 4; ++j) c.crossings.push_back({(j + 2) % 4, j, (j + 1) % 4, signs[j]});
  return c;
}

CrossingList hopf_diagram(int sign) {
  return {2, {{1, 0, 0, sign}, {0, 1, 1, sign}}, {{0}, {1}}};
}

CrossingList unlink_diagram(std::size_t components) {
  CrossingList c{components, {}, {}};
  for (std::uint32_t a = 0; a < components; ++a) c.components.push_back({a});
  return c;
}

namespace {

long crossing_ending(CrossingList const& c, std::uint32_t arc) {
  for (std::size_t k = 0; k < c.crossings.size(); ++k)
    if (c.crossings[k].under_in == arc) return static_cast<long>(k);
  return -1;
}

void insert_after(CrossingList& c, std::uint32_t arc, std::vector<std::uint32_t> const& added) {
  for (auto& comp : c.components) {
    auto it = std::find(comp.begin(), comp.end(), arc);
    if (it != comp.end()) {
      comp.insert(it + 1, added.begin(), added.end());
      return;
    }
  }
}

}  // namespace

CrossingList reidemeister1(CrossingList const& c, std::uint32_t arc, int sign, bool over_first) {
  validate(c);
  if (arc >= c.num_arcs) throw InvalidInput("no arc " + std::to_string(arc));
  CrossingList out = c;
  long end = crossing_ending(c, arc);
  if (end < 0) {
    // Crossingless circle: the kink's single crossing joins the arc to itself.
    out.crossings.push_back({arc, arc, arc, sign});
    return out;
  }
  auto b = static_cast<std::uint32_t>(out.num_arcs++);
  out.crossings[static_cast<std::size_t>(end)].under_in = b;
  out.crossings.push_back({over_first ? arc : b, arc, b, sign});
  insert_after(out, arc, {b});
  return out;
}

CrossingList reidemeister2(CrossingList const& c, std::uint32_t over, std::uint32_t under,
                           int sign) {
  validate(c);
  if (over >= c.num_arcs || under >= c.num_arcs) throw InvalidInput("no such arc");
  CrossingList out = c;
  long end = crossing_ending(c, under);
  auto u1 = static_cast<std::uint32_t>(out.num_arcs++);
  std::uint32_t u2 = under;
  if (end >= 0) {
    u2 = static_cast<std::uint32_t>(out.num_arcs++);
    out.crossings[static_cast<std::size_t>(end)].under_in = u2;
    insert_after(out, under, {u1, u2});
  } else {
    insert_after(out, under, {u1});
  }
  out.crossings.push_back({over, under, u1, sign});
  out.crossings.push_back({over, u1, u2, -sign});
  return out;
}

std::map<std::uint64_t, std::uint64_t> element_order_histogram(FiniteQuotient const& q) {
  if (!q.known_regular()) throw InvalidInput("element orders need a regular quotient");
  auto e = enumerate(q, q.degree());
  std::vector<std::uint64_t> ord(e.order, 0);
  ord[0] = 1;
  // x^k as points: start at 0 and apply x's witness k times.
#pragma omp parallel for schedule(dynamic, 64)
  for (std::size_t x = 1; x < e.order; ++x) {
    auto w = e.witness(static_cast<std::uint32_t>(x));
    std::uint32_t pt = static_cast<std::uint32_t>(x);
    std::uint64_t k = 1;
    while (pt != 0) {
      pt = q.apply(pt, w);
      ++k;
    }
    ord[x] = k;
  }
  std::map<std::uint64_t, std::uint64_t> h;
  for (auto o : ord) ++h[o];
  return h;
}

LinkInvariant link_invariant(CrossingList const& c, std::uint32_t p, std::size_t n,
                             SeriesOptions const& opts) {
  auto g = wirtinger(c);
  auto stage = derived_stage(g, p, n, opts);
  LinkInvariant inv{p, n, c.components.size(), stage.order(), stage.layer_dims,
                    stage.stabilized, {}, std::nullopt};
  for (auto const& comp : c.components)
    inv.meridian_orders.push_back(stage.quotient.element_order(Word::generator(comp[0])));
  std::sort(inv.meridian_orders.begin(), inv.meridian_orders.end());
  if (stage.order() <= kHistogramCap) inv.order_histogram = element_order_histogram(stage.quotient);
  return inv;
}

std::string to_string(LinkVerdict v) {
  switch (v) {
    case LinkVerdict::distinguished: return "distinguished";
    case LinkVerdict::not_distinguished: return "not_distinguished";
    case LinkVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

LinkComparison compare_links(CrossingList const& a, CrossingList const& b, std::uint32_t p,
                             std::size_t n, SeriesOptions const& opts) {
  validate(a);
  validate(b);
  auto fa = std::async(std::launch::async, [&] { return link_invariant(a, p, n, opts); });
  auto fb = std::async(std::launch::async, [&] { return link_invariant(b, p, n, opts); });
  LinkComparison out{LinkVerdict::inconclusive, std::nullopt, std::nullopt, {}};
  try {
    out.first = fa.get();
  } catch (SeriesExplosion const& e) {
    out.reasons.push_back(std::string("first: ") + e.what());
  }
  try {
    out.second = fb.get();
  } catch (SeriesExplosion const& e) {
    out.reasons.push_back(std::string("second: ") + e.what());
  }
  if (!out.first || !out.second) return out;
  auto const& x = *out.first;
  auto const& y = *out.second;
  if (x.order != y.order) out.reasons.push_back("order");
  if (x.layer_dims != y.layer_dims) out.reasons.push_back("layer_dims");
  if (x.meridian_orders != y.meridian_orders) out.reasons.push_back("meridian_orders");
  if (x.order_histogram && y.order_histogram && x.order_histogram != y.order_histogram)
    out.reasons.push_back("order_histogram");
  out.verdict = out.reasons.empty() ? LinkVerdict::not_distinguished : LinkVerdict::distinguished;
  return out;
}

nlohmann::json to_json(CrossingList const& c) {
  auto cr = nlohmann::json::array();
  for (auto const& x : c.crossings) cr.push_back({x.over, x.under_in, x.under_out, x.sign});
  return {{"arcs", c.num_arcs}, {"components", c.components}, {"crossings", cr}};
}

CrossingList crossing_list_from_json(nlohmann::json const& j) {
  CrossingList c;
  try {
    c.num_arcs = j.at("arcs").get<std::size_t>();
    c.components = j.at("components").get<std::vector<std::vector<std::uint32_t>>>();
    for (auto const& x : j.value("crossings", nlohmann::json::array())) {
      if (!x.is_array() || x.size() != 4)
        throw InvalidInput("a crossing is [over, under_in, under_out, sign]");
      c.crossings.push_back({x[0].get<std::uint32_t>(), x[1].get<std::uint32_t>(),
                             x[2].get<std::uint32_t>(), x[3].get<int>()});
    }
  } catch (nlohmann::json::exception const& e) {
    throw InvalidInput(std::string("bad link JSON: ") + e.what());
  }
  validate(c);
  return c;
}

nlohmann::json to_json(LinkInvariant const& inv) {
  nlohmann::json j{{"p", inv.p},
                   {"n", inv.n},
                   {"components", inv.components},
                   {"order", inv.order},
                   {"layer_dims", inv.layer_dims},
                   {"stabilized", inv.stabilized},
                   {"meridian_orders", inv.meridian_orders}};
  if (inv.order_histogram) {
    auto h = nlohmann::json::array();
    for (auto [o, k] : *inv.order_histogram) h.push_back({o, k});
    j["order_histogram"] = h;
  } else {
    j["order_histogram"] = nullptr;
  }
  return j;
}

nlohmann::json to_json(LinkComparison const& cmp) {
  return {{"verdict", to_string(cmp.verdict)},
          {"first", cmp.first ? to_json(*cmp.first) : nlohmann::json(nullptr)},
          {"second", cmp.second ? to_json(*cmp.second) : nlohmann::json(nullptr)},
          {"reasons", cmp.reasons}};
}

}  // namespace psolv
