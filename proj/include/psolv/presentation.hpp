#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "psolv/word.hpp"

namespace psolv {

// A finitely presented group <generators | relators>.
class Presentation {
 public:
  Presentation() = default;
  // Throws InvalidInput on duplicate/empty names or out-of-range relators.
  Presentation(std::vector<std::string> generator_names,
               std::vector<Word> relators);

  // Generators named x0, x1, ... when names do not matter.
  static Presentation anonymous(std::size_t num_gens,
                                std::vector<Word> relators = {});

  std::size_t num_generators() const noexcept { return names_.size(); }
  std::vector<std::string> const& generator_names() const noexcept {
    return names_;
  }
  std::vector<Word> const& relators() const noexcept { return relators_; }

  std::optional<std::uint32_t> index_of(std::string_view name) const;

  friend bool operator==(Presentation const&, Presentation const&) = default;

 private:
  std::vector<std::string> names_;
  std::vector<Word>        relators_;
};

// Free product: generators and relators of `b` are appended after `a`'s.
// Clashing names in `b` get a trailing apostrophe.
Presentation free_product(Presentation const& a, Presentation const& b);

// A homomorphism candidate, one image word (in target generators) per
// source generator.  Whether relators go to the identity is checked per
// quotient level, never globally.
class GroupMap {
 public:
  GroupMap(Presentation source, Presentation target, std::vector<Word> images);

  Presentation const& source() const noexcept { return source_; }
  Presentation const& target() const noexcept { return target_; }
  std::vector<Word> const& images() const noexcept { return images_; }

  // Image of a source word as a target word.
  Word apply(Word const& w) const;

 private:
  Presentation      source_;
  Presentation      target_;
  std::vector<Word> images_;
};

// ---- text format ----------------------------------------------------------
//
//   gens: a, b; rels: a b a B A B; a^2 b^-3
//
// Uppercase single letters denote inverses of the matching lowercase
// generator; `.` and whitespace both separate atoms; `1` is the empty word;
// `#` starts a comment.  The `;` before `rels:` is optional, and a
// presentation without `rels:` is free.  Several presentations may share a file, separated
// by lines consisting of `---`.

Presentation parse_presentation(std::string_view text);
std::vector<Presentation> parse_presentations(std::string_view text);
// Parses a word over the generators of `context`.
Word parse_word(std::string_view text, Presentation const& context);

std::string format_word(Word const& w, Presentation const& context);
std::string format_presentation(Presentation const& p);

// ---- JSON ----------------------------------------------------------------

nlohmann::json to_json(Presentation const& p);
Presentation presentation_from_json(nlohmann::json const& j);

// Map file: {"images": {"t": "a b"}} keyed by source generator names.
// Every source generator must have an entry.
GroupMap group_map_from_json(nlohmann::json const& j, Presentation source,
                             Presentation target);

std::string read_file(std::string const& path);

}  // namespace psolv
