#include "psolv/word.hpp"

#include <algorithm>

namespace psolv {

std::vector<Letter> free_reduce(std::span<Letter const> letters) {
  std::vector<Letter> out;
  out.reserve(letters.size());
  for (Letter l : letters) {
    if (!out.empty() && out.back() == l.inverse()) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

Word::Word(std::vector<Letter> letters) : letters_(free_reduce(letters)) {}

Word::Word(std::initializer_list<Letter> letters)
    : letters_(free_reduce(std::span<Letter const>(letters.begin(), letters.size()))) {}

Word Word::generator(std::uint32_t gen, int exp) {
  Word w;
  Letter l{gen, static_cast<std::int8_t>(exp < 0 ? -1 : 1)};
  w.letters_.assign(static_cast<std::size_t>(exp < 0 ? -exp : exp), l);
  return w;
}

std::uint32_t Word::generator_bound() const noexcept {
  std::uint32_t bound = 0;
  for (Letter l : letters_) bound = std::max(bound, l.gen + 1);
  return bound;
}

Word free_reduce(Word const& w) { return w; }

Word multiply(Word const& a, Word const& b) {
  std::vector<Letter> out(a.begin(), a.end());
  // Cancel across the seam, then append the rest.
  std::size_t i = 0;
  while (i < b.size() && !out.empty() && out.back() == b[i].inverse()) {
    out.pop_back();
    ++i;
  }
  out.insert(out.end(), b.begin() + static_cast<std::ptrdiff_t>(i), b.end());
  return Word(std::move(out));
}

Word invert(Word const& w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) {
    out.push_back(it->inverse());
  }
  return Word(std::move(out));
}

Word conjugate(Word const& w, Word const& g) {
  return multiply(multiply(invert(g), w), g);
}

Word commutator(Word const& a, Word const& b) {
  return multiply(multiply(invert(a), invert(b)), multiply(a, b));
}

Word power(Word const& w, long k) {
  Word base = k < 0 ? invert(w) : w;
  if (k < 0) k = -k;
  Word result;
  // Square-and-multiply keeps this cheap for large exponents.
  while (k > 0) {
    if (k & 1) result = multiply(result, base);
    base = multiply(base, base);
    k >>= 1;
  }
  return result;
}

std::vector<long> exponent_sums(Word const& w, std::size_t num_gens) {
  std::vector<long> sums(num_gens, 0);
  for (Letter l : w) sums.at(l.gen) += l.exp;
  return sums;
}

}  // namespace psolv
