// Command-line front end.  Exit codes:
//   0  success / consistent
//   1  bad input or usage
//   2  a size cap was hit (partial output is still printed)
//   3  hypothesis not met
//   4  conclusion violated (a bug, if the hypotheses were verified)

#include <cstdlib>
#include <iostream>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "psolv/chainfp.hpp"
#include "psolv/error.hpp"
#include "psolv/homology.hpp"
#include "psolv/links.hpp"
#include "psolv/presentation.hpp"
#include "psolv/series.hpp"

using nlohmann::json;
using namespace psolv;

namespace {

enum Exit { kOk = 0, kInput = 1, kCap = 2, kHypothesis = 3, kViolated = 4 };

struct Config {
  std::uint32_t p = 2;
  std::size_t   n = 2;
  std::string   kind = "derived";
  std::uint64_t max_order = 0;  // 0: environment or default
  std::size_t   homology_cap = kHomologyCap;
  std::string   format = "text";
  std::uint64_t seed = 1;
};

SeriesOptions series_options(Config const& c) {
  auto opts = options_from_env();
  if (c.max_order) opts.max_order = c.max_order;
  return opts;
}

// Text output: nested "key: value" lines, scalars and scalar arrays inline.
void print_text(json const& j, int indent = 0) {
  std::string pad(static_cast<std::size_t>(indent), ' ');
  auto inline_ok = [](json const& v) {
    if (!v.is_structured()) return true;
    if (v.is_array())
      for (auto const& e : v)
        if (e.is_object()) return false;
    return v.is_array();
  };
  auto scalar = [](json const& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  for (auto it = j.begin(); it != j.end(); ++it) {
    auto const& v = it.value();
    if (inline_ok(v)) {
      std::cout << pad << it.key() << ": " << scalar(v) << "\n";
    } else if (v.is_object()) {
      std::cout << pad << it.key() << ":\n";
      print_text(v, indent + 2);
    } else {
      std::cout << pad << it.key() << ":\n";
      for (auto const& e : v) {
        std::cout << pad << "  -\n";
        print_text(e, indent + 4);
      }
    }
  }
}

void emit(Config const& c, json const& j) {
  if (c.format == "json") std::cout << j.dump(2) << "\n";
  else print_text(j);
}

json read_json(std::string const& path) {
  try {
    return json::parse(read_file(path));
  } catch (json::parse_error const& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

Presentation read_presentation(std::string const& path) {
  auto text = read_file(path);
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return presentation_from_json(read_json(path));
  return parse_presentation(text);
}

Ratio parse_ratio(std::string const& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return make_ratio(std::stoull(s), 1);
    return make_ratio(std::stoull(s.substr(0, slash)), std::stoull(s.substr(slash + 1)));
  } catch (std::logic_error const&) {
    throw InvalidInput("bad ratio '" + s + "'");
  }
}

// ---- commands -------------------------------------------------------------------

int cmd_h1(Config const& c, std::string const& file) {
  auto g = read_presentation(file);
  auto h = h1_mod_p(g, c.p);
  if (c.format == "json") emit(c, {{"p", c.p}, {"h1", h.dim}});
  else std::cout << h.dim << "\n";
  return kOk;
}

int cmd_series(Config const& c, std::string const& file) {
  auto g = read_presentation(file);
  auto kind = series_kind_from_string(c.kind);
  try {
    emit(c, to_json(series_stage(g, c.p, c.n, kind, series_options(c))));
    return kOk;
  } catch (SeriesExplosion const& e) {
    auto j = to_json(e.partial());
    j["explosion"] = {{"message", e.what()},
                      {"level_reached", e.level_reached()},
                      {"offending_dim", e.offending_dim()}};
    emit(c, j);
    return kCap;
  }
}

int cmd_compare(Config const& c, std::string const& fa, std::string const& fb,
                std::string const& fmap, bool assume_h2) {
  auto a = read_presentation(fa);
  auto b = read_presentation(fb);
  auto phi = group_map_from_json(read_json(fmap), a, b);
  auto rep = stallings_report(phi, c.p, c.n, series_kind_from_string(c.kind), assume_h2,
                              series_options(c));
  emit(c, to_json(rep));
  switch (rep.verdict) {
    case StallingsVerdict::consistent: return kOk;
    case StallingsVerdict::hypothesis_not_met: return kHypothesis;
    case StallingsVerdict::conclusion_violated: return kViolated;
  }
  return kOk;
}

int cmd_growth(Config const& c, std::string const& file, std::string const& threshold) {
  auto g = read_presentation(file);
  auto rep = growth_statistics(g, c.p, c.n, parse_ratio(threshold), series_options(c));
  emit(c, to_json(rep));
  return rep.truncated ? kCap : kOk;
}

FiniteGroup read_finite_group(Config const& c, std::string const& file) {
  auto text = read_file(file);
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    auto j = read_json(file);
    if (j.contains("table")) return finite_group_from_json(j);
    if (j.contains("gens")) {
      return FiniteGroup::from_permutations(j.at("gens").get<std::vector<Permutation>>(),
                                            c.homology_cap);
    }
    return FiniteGroup::from_quotient(
        stabilized_derived_quotient(presentation_from_json(j), c.p, series_options(c)).quotient,
        c.homology_cap);
  }
  // A presentation of a finite p-group: its derived p-series reaches the
  // whole group once it stabilizes.
  auto opts = series_options(c);
  opts.max_order = std::min<std::uint64_t>(opts.max_order, c.homology_cap);
  auto stage = stabilized_derived_quotient(parse_presentation(text), c.p, opts);
  return FiniteGroup::from_quotient(stage.quotient, c.homology_cap);
}

int cmd_finhom(Config const& c, std::string const& file, std::optional<std::size_t> m,
               std::string filtration) {
  auto g = read_finite_group(c, file);
  BarHomology h(g, c.p, c.homology_cap);
  if (!m) {
    emit(c, homology_report(h, nullptr));
    return kOk;
  }
  if (filtration.empty())
    filtration = series_kind_from_string(c.kind) == SeriesKind::derived ? "derived-image" : "dwyer";
  H2Filtration f = filtration == "dwyer"           ? dwyer_kernel(h, *m)
                   : filtration == "derived-image" ? derived_image_filtration(h, *m)
                   : filtration == "derived-kernel"
                       ? derived_kernel_filtration(h, *m)
                       : throw InvalidInput("unknown filtration '" + filtration + "'");
  emit(c, homology_report(h, &f));
  return kOk;
}

json elements_json(std::vector<GroupRing::Element> const& v) { return v; }

GroupRing named_ring(std::string const& name, std::uint32_t p) {
  auto cyc = [](std::size_t n) {
    std::vector<std::uint32_t> t;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) t.push_back(static_cast<std::uint32_t>((a + b) % n));
    return FiniteGroup::from_table(t, n);
  };
  if (name == "z2") return GroupRing(cyc(2), p);
  if (name == "z4") return GroupRing(cyc(4), p);
  if (name == "z2xz2") {
    std::vector<std::uint32_t> t;
    for (std::uint32_t a = 0; a < 4; ++a)
      for (std::uint32_t b = 0; b < 4; ++b) t.push_back(a ^ b);
    return GroupRing(FiniteGroup::from_table(t, 4), p);
  }
  throw InvalidInput("unknown group '" + name + "' (z2, z4, z2xz2)");
}

int chain_file(Config const& c, std::string const& check, std::string const& file,
               std::size_t m) {
  auto j = read_json(file);
  if (check == "strebel" || check == "map-rank") {
    auto [r, f] = ring_matrix_from_json(j);
    if (check == "map-rank") {
      auto rep = map_rank_check(r, f);
      emit(c, {{"lhs", rep.lhs}, {"rhs", rep.rhs}, {"pass", rep.pass()}});
      return rep.pass() ? kOk : kViolated;
    }
    auto rep = strebel_check(r, f);
    json out{{"augmented_injective", rep.augmented_injective},
             {"injective", rep.injective},
             {"p_group", r.is_p_group()},
             {"verdict", to_string(rep.verdict)}};
    out["witness"] = rep.witness ? elements_json(*rep.witness) : json(nullptr);
    emit(c, out);
    switch (rep.verdict) {
      case StrebelVerdict::hypothesis_not_met: return kHypothesis;
      case StrebelVerdict::fails: return kViolated;
      default: return kOk;
    }
  }
  auto d = complex_from_json(j);
  if (check == "rank") {
    auto rows = rank_inequality_check(d);
    json out = json::array();
    bool ok = true;
    for (auto const& row : rows) {
      out.push_back({{"q", row.q}, {"lhs", row.lhs}, {"rhs", row.rhs}, {"pass", row.pass()}});
      ok = ok && row.pass();
    }
    emit(c, {{"degrees", out}, {"pass", ok}});
    return ok ? kOk : kViolated;
  }
  if (check == "acyclic") {
    auto rep = acyclic_lift_check(d, m);
    emit(c, {{"m", rep.m},
             {"dims", rep.dims},
             {"augmented_dims", rep.augmented_dims},
             {"hypothesis", rep.hypothesis},
             {"conclusion", rep.conclusion}});
    if (!rep.hypothesis) return kHypothesis;
    return rep.conclusion ? kOk : kViolated;
  }
  throw InvalidInput("unknown check '" + check + "'");
}

// Runs `count` random instances of a check; exit 4 on any failure.
int chain_random(Config const& c, std::string const& check, std::string const& gamma,
                 std::size_t count, std::size_t m) {
  auto r = named_ring(gamma, c.p);
  std::mt19937_64 rng(c.seed);
  std::size_t failures = 0, hypothesis = 0;
  std::uniform_int_distribution<std::size_t> sz(1, 3);
  for (std::size_t i = 0; i < count; ++i) {
    if (check == "rank") {
      for (auto const& row : rank_inequality_check(random_complex(r, 3, rng)))
        if (!row.pass()) ++failures;
    } else if (check == "strebel") {
      auto rows = sz(rng), cols = sz(rng);
      auto rep = strebel_check(r, random_matrix(r, std::max(rows, cols), cols, rng));
      if (rep.verdict != StrebelVerdict::hypothesis_not_met) ++hypothesis;
      if (rep.verdict == StrebelVerdict::fails) ++failures;
    } else if (check == "map-rank") {
      if (!map_rank_check(r, random_matrix(r, sz(rng), sz(rng), rng)).pass()) ++failures;
    } else if (check == "acyclic") {
      auto rep = acyclic_lift_check(random_complex(r, m + 1, rng), m);
      if (rep.hypothesis) ++hypothesis;
      if (!rep.pass()) ++failures;
    } else {
      throw InvalidInput("unknown check '" + check + "'");
    }
  }
  nlohmann::json out{{"check", check}, {"gamma", gamma},       {"p", c.p},
                     {"seed", c.seed},   {"instances", count}, {"failures", failures}};
  if (check == "strebel" || check == "acyclic") out["hypothesis_met"] = hypothesis;
  emit(c, out);
  return failures ? kViolated : kOk;
}

int cmd_link(Config const& c, std::vector<std::string> const& files) {
  auto opts = series_options(c);
  auto first = crossing_list_from_json(read_json(files[0]));
  if (files.size() == 1) {
    try {
      emit(c, to_json(link_invariant(first, c.p, c.n, opts)));
      return kOk;
    } catch (SeriesExplosion const& e) {
      emit(c, {{"explosion", {{"message", e.what()}, {"level_reached", e.level_reached()}}}});
      return kCap;
    }
  }
  auto second = crossing_list_from_json(read_json(files[1]));
  auto cmp = compare_links(first, second, c.p, c.n, opts);
  emit(c, to_json(cmp));
  return cmp.verdict == LinkVerdict::inconclusive ? kCap : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Derived p-series and lower central p-series quotients of finitely presented groups"};
  app.require_subcommand(1);
  Config cfg;

  auto common = [&](CLI::App* sub, bool depth) {
    sub->add_option("--p", cfg.p, "prime")->check(CLI::PositiveNumber);
    if (depth) sub->add_option("--n", cfg.n, "series level / depth");
    sub->add_option("--kind", cfg.kind, "derived or lcs");
    sub->add_option("--max-order", cfg.max_order, "largest quotient order to build");
    sub->add_option("--format", cfg.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
  };

  std::string file, file_b, map_file, threshold = "1", filtration, check, gamma;
  std::optional<std::size_t> m;
  std::size_t acyclic_m = 1, random_count = 0;
  bool no_assume_h2 = false;
  std::vector<std::string> link_files;

  auto* h1 = app.add_subcommand("h1", "dimension of H_1(G; F_p)");
  common(h1, false);
  h1->add_option("file", file, "presentation")->required();

  auto* series = app.add_subcommand("series", "quotient G/G_n of the chosen series");
  common(series, true);
  series->add_option("file", file, "presentation")->required();

  auto* compare = app.add_subcommand("compare", "check a map A -> B against the Stallings-type theorems");
  common(compare, true);
  compare->add_option("source", file, "presentation of A")->required();
  compare->add_option("target", file_b, "presentation of B")->required();
  compare->add_option("map", map_file, "map file {\"images\": {...}}")->required();
  compare->add_flag("--no-assume-h2", no_assume_h2,
                    "do not assume the H_2 condition; the hypothesis is then not met");

  auto* growth = app.add_subcommand("growth", "layer dimension over index along the derived p-series");
  common(growth, true);
  growth->add_option("file", file, "presentation")->required();
  growth->add_option("--threshold", threshold, "ratio a/b the growth must exceed");

  auto* finhom = app.add_subcommand("finhom", "H_1, H_2 and H_2 filtrations of a finite group");
  common(finhom, false);
  finhom->add_option("group", file, "presentation of a finite p-group, table or permutation JSON")
      ->required();
  finhom->add_option("--m", m, "filtration level");
  finhom->add_option("--filtration", filtration, "dwyer, derived-image or derived-kernel");
  finhom->add_option("--homology-cap", cfg.homology_cap, "largest group order");

  auto* chain = app.add_subcommand("chain", "verifiers for chain complexes over F_p[Gamma]");
  common(chain, false);
  chain->add_option("--check", check, "rank, strebel, map-rank or acyclic")->required();
  chain->add_option("file", file, "complex or matrix JSON");
  chain->add_option("--m", acyclic_m, "degree bound for the acyclic check");
  chain->add_option("--random", random_count, "run this many random instances instead");
  chain->add_option("--gamma", gamma, "z2, z4 or z2xz2 for --random");
  chain->add_option("--seed", cfg.seed, "seed for --random");

  auto* link = app.add_subcommand("link", "derived p-quotient invariants of links");
  common(link, true);
  link->add_option("files", link_files, "one link file, or two to compare")
      ->required()
      ->expected(1, 2);

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    return app.exit(e) == 0 ? kOk : kInput;
  }

  try {
    if (!is_prime(cfg.p)) throw InvalidInput(std::to_string(cfg.p) + " is not prime");
    if (*h1) return cmd_h1(cfg, file);
    if (*series) return cmd_series(cfg, file);
    if (*compare) return cmd_compare(cfg, file, file_b, map_file, !no_assume_h2);
    if (*growth) return cmd_growth(cfg, file, threshold);
    if (*finhom) return cmd_finhom(cfg, file, m, filtration);
    if (*chain) {
      if (random_count) return chain_random(cfg, check, gamma.empty() ? "z2" : gamma, random_count, acyclic_m);
      if (file.empty()) throw InvalidInput("chain needs a file or --random");
      return chain_file(cfg, check, file, acyclic_m);
    }
    if (*link) return cmd_link(cfg, link_files);
  } catch (SeriesExplosion const& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kCap;
  } catch (CapExceeded const& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kCap;
  } catch (Error const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
  return kOk;
}
