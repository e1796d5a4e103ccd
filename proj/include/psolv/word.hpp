#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace psolv {

// One generator or its inverse.
struct Letter {
  std::uint32_t gen;
  std::int8_t   exp;  // +1 or -1

  constexpr Letter inverse() const noexcept {
    return Letter{gen, static_cast<std::int8_t>(-exp)};
  }
  friend constexpr bool operator==(Letter, Letter) = default;
  friend constexpr auto operator<=>(Letter, Letter) = default;
};

// A freely reduced word in a free group.  Every constructor reduces, so two
// Words compare equal exactly when they represent the same free-group
// element.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters);
  Word(std::initializer_list<Letter> letters);

  static Word generator(std::uint32_t gen, int exp = 1);

  std::span<Letter const> letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }

  auto begin() const noexcept { return letters_.begin(); }
  auto end() const noexcept { return letters_.end(); }

  // Largest generator index + 1, or 0 for the empty word.
  std::uint32_t generator_bound() const noexcept;

  friend bool operator==(Word const&, Word const&) = default;
  friend auto operator<=>(Word const& a, Word const& b) {
    return a.letters_ <=> b.letters_;
  }

 private:
  std::vector<Letter> letters_;
};

std::vector<Letter> free_reduce(std::span<Letter const> letters);
Word free_reduce(Word const& w);

Word multiply(Word const& a, Word const& b);
Word invert(Word const& w);
// g^-1 w g
Word conjugate(Word const& w, Word const& g);
// a^-1 b^-1 a b
Word commutator(Word const& a, Word const& b);
// Negative k gives powers of the inverse.
Word power(Word const& w, long k);

inline Word operator*(Word const& a, Word const& b) { return multiply(a, b); }

// Exponent sum of each generator, length `num_gens`.
std::vector<long> exponent_sums(Word const& w, std::size_t num_gens);

}  // namespace psolv
