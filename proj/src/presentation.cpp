#include "psolv/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "psolv/error.hpp"

namespace psolv {

// ---- Presentation ---------------------------------------------------------

Presentation::Presentation(std::vector<std::string> generator_names,
                           std::vector<Word> relators)
    : names_(std::move(generator_names)), relators_(std::move(relators)) {
  std::set<std::string> seen;
  for (auto const& n : names_) {
    if (n.empty()) throw InvalidInput("empty generator name");
    if (!seen.insert(n).second) {
      throw InvalidInput("duplicate generator name '" + n + "'");
    }
  }
  for (auto const& r : relators_) {
    if (r.generator_bound() > names_.size()) {
      throw InvalidInput("relator uses a generator index out of range");
    }
  }
}

Presentation Presentation::anonymous(std::size_t num_gens,
                                     std::vector<Word> relators) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < num_gens; ++i) {
    names.push_back("x" + std::to_string(i));
  }
  return Presentation(std::move(names), std::move(relators));
}

std::optional<std::uint32_t> Presentation::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<std::uint32_t>(i);
  }
  return std::nullopt;
}

Presentation free_product(Presentation const& a, Presentation const& b) {
  std::vector<std::string> names = a.generator_names();
  std::set<std::string>    used(names.begin(), names.end());
  for (auto name : b.generator_names()) {
    while (used.count(name)) name += "'";
    used.insert(name);
    names.push_back(name);
  }
  auto const shift = static_cast<std::uint32_t>(a.num_generators());
  std::vector<Word> rels = a.relators();
  for (auto const& r : b.relators()) {
    std::vector<Letter> letters;
    for (Letter l : r) letters.push_back(Letter{l.gen + shift, l.exp});
    rels.emplace_back(std::move(letters));
  }
  return Presentation(std::move(names), std::move(rels));
}

// ---- GroupMap -------------------------------------------------------------

GroupMap::GroupMap(Presentation source, Presentation target,
                   std::vector<Word> images)
    : source_(std::move(source)),
      target_(std::move(target)),
      images_(std::move(images)) {
  if (images_.size() != source_.num_generators()) {
    throw InvalidInput("map needs one image per source generator");
  }
  for (auto const& w : images_) {
    if (w.generator_bound() > target_.num_generators()) {
      throw InvalidInput("map image uses an unknown target generator");
    }
  }
}

Word GroupMap::apply(Word const& w) const {
  std::vector<Letter> out;
  for (Letter l : w) {
    Word const& img = images_.at(l.gen);
    if (l.exp > 0) {
      out.insert(out.end(), img.begin(), img.end());
    } else {
      for (auto it = img.letters().rbegin(); it != img.letters().rend(); ++it) {
        out.push_back(it->inverse());
      }
    }
  }
  return Word(std::move(out));
}

// ---- lexer ----------------------------------------------------------------

namespace {

enum class Tok { ident, integer, colon, comma, semicolon, caret, end };

struct Token {
  Tok         kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

class Lexer {
 public:
  Lexer(std::string_view text, std::size_t first_line)
      : text_(text), line_(first_line) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      if (pos_ >= text_.size()) {
        out.push_back({Tok::end, "", line_, col_});
        return out;
      }
      char c = text_[pos_];
      std::size_t l = line_, col = col_;
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string s;
        while (pos_ < text_.size()
               && (std::isalnum(static_cast<unsigned char>(text_[pos_]))
                   || text_[pos_] == '_' || text_[pos_] == '\'')) {
          s += text_[pos_];
          advance();
        }
        out.push_back({Tok::ident, s, l, col});
      } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') {
        std::string s;
        s += c;
        advance();
        while (pos_ < text_.size()
               && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          s += text_[pos_];
          advance();
        }
        if (s == "-") throw ParseError("stray '-'", l, col);
        out.push_back({Tok::integer, s, l, col});
      } else {
        Tok k;
        switch (c) {
          case ':': k = Tok::colon; break;
          case ',': k = Tok::comma; break;
          case ';': k = Tok::semicolon; break;
          case '^': k = Tok::caret; break;
          default:
            throw ParseError(std::string("unexpected character '") + c + "'",
                             l, col);
        }
        advance();
        out.push_back({k, std::string(1, c), l, col});
      }
    }
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c)) || c == '.') {
        advance();
      } else {
        return;
      }
    }
  }

  std::string_view text_;
  std::size_t      pos_  = 0;
  std::size_t      line_ = 1;
  std::size_t      col_  = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Presentation presentation() {
    expect_keyword("gens");
    expect(Tok::colon, "':'");
    std::vector<std::string> names;
    std::set<std::string>    seen;
    while (true) {
      Token const& t = expect(Tok::ident, "generator name");
      if (!seen.insert(t.text).second) {
        throw ParseError("duplicate generator name '" + t.text + "'", t.line,
                         t.column);
      }
      names.push_back(t.text);
      if (peek().kind != Tok::comma) break;
      next();
    }
    // "rels:" may follow on the next line, or be left out for a free group.
    if (peek().kind == Tok::semicolon) next();
    if (peek().kind == Tok::end) return Presentation(std::move(names), {});
    expect_keyword("rels");
    expect(Tok::colon, "':'");
    Presentation ctx(names, {});
    std::vector<Word> rels;
    while (peek().kind != Tok::end) {
      if (peek().kind == Tok::semicolon) {
        next();
        continue;
      }
      Word w = word(ctx);
      // Relators that reduce to the identity carry no information.
      if (!w.empty()) rels.push_back(std::move(w));
    }
    return Presentation(std::move(names), std::move(rels));
  }

  Word word(Presentation const& ctx) {
    std::vector<Letter> letters;
    while (peek().kind == Tok::ident || peek().kind == Tok::integer) {
      Token const& t = next();
      if (t.kind == Tok::integer) {
        if (t.text != "1") {
          throw ParseError("unexpected number '" + t.text + "'", t.line,
                           t.column);
        }
        continue;
      }
      std::vector<Letter> atom = resolve(t, ctx);
      long exponent = 1;
      if (peek().kind == Tok::caret) {
        next();
        Token const& e = expect(Tok::integer, "exponent");
        exponent = std::stol(e.text);
      }
      // The exponent binds to the last letter only (matters for "ab^2").
      Letter last = atom.back();
      atom.pop_back();
      letters.insert(letters.end(), atom.begin(), atom.end());
      Letter base = exponent < 0 ? last.inverse() : last;
      for (long i = 0; i < (exponent < 0 ? -exponent : exponent); ++i) {
        letters.push_back(base);
      }
    }
    return Word(std::move(letters));
  }

  void expect_end() { expect(Tok::end, "end of input"); }

 private:
  std::vector<Letter> resolve(Token const& t, Presentation const& ctx) {
    if (auto i = ctx.index_of(t.text)) return {Letter{*i, 1}};
    auto single = [&](char c) -> std::optional<Letter> {
      std::string s(1, c);
      if (auto i = ctx.index_of(s)) return Letter{*i, 1};
      if (std::isupper(static_cast<unsigned char>(c))) {
        std::string lower(1, static_cast<char>(std::tolower(c)));
        if (auto i = ctx.index_of(lower)) return Letter{*i, -1};
      }
      return std::nullopt;
    };
    if (t.text.size() == 1) {
      if (auto l = single(t.text[0])) return {*l};
    } else {
      // With single-letter generators, "abAB" may be written unseparated.
      bool all_single = std::all_of(
          ctx.generator_names().begin(), ctx.generator_names().end(),
          [](std::string const& n) { return n.size() == 1; });
      if (all_single) {
        std::vector<Letter> out;
        for (char c : t.text) {
          auto l = single(c);
          if (!l) break;
          out.push_back(*l);
        }
        if (out.size() == t.text.size()) return out;
      }
    }
    throw ParseError("unknown generator '" + t.text + "'", t.line, t.column);
  }

  Token const& peek() const { return toks_[pos_]; }
  Token const& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  Token const& expect(Tok k, char const* what) {
    Token const& t = peek();
    if (t.kind != k) {
      throw ParseError(std::string("expected ") + what + ", found '" + t.text
                           + "'",
                       t.line, t.column);
    }
    return next();
  }

  void expect_keyword(char const* kw) {
    Token const& t = peek();
    if (t.kind != Tok::ident || t.text != kw) {
      throw ParseError(std::string("expected '") + kw + "'", t.line, t.column);
    }
    next();
  }

  std::vector<Token> toks_;
  std::size_t        pos_ = 0;
};

}  // namespace

Presentation parse_presentation(std::string_view text) {
  auto all = parse_presentations(text);
  if (all.size() != 1) {
    throw ParseError("expected exactly one presentation, found "
                         + std::to_string(all.size()),
                     1, 1);
  }
  return std::move(all.front());
}

std::vector<Presentation> parse_presentations(std::string_view text) {
  std::vector<Presentation> out;
  std::size_t block_start = 0, line = 1, block_line = 1;
  auto flush = [&](std::size_t end) {
    std::string_view block = text.substr(block_start, end - block_start);
    bool blank = std::all_of(block.begin(), block.end(), [](char c) {
      return std::isspace(static_cast<unsigned char>(c));
    });
    if (blank) return;
    // Line numbers in errors stay relative to the whole file.
    std::string padded(block_line - 1, '\n');
    padded.append(block);
    Parser parser(Lexer(padded, 1).run());
    out.push_back(parser.presentation());
  };
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view ln = text.substr(pos, eol - pos);
    while (!ln.empty() && std::isspace(static_cast<unsigned char>(ln.back()))) {
      ln.remove_suffix(1);
    }
    if (ln == "---") {
      flush(pos);
      block_start = eol + 1;
      block_line  = line + 1;
    }
    pos = eol + 1;
    ++line;
  }
  if (block_start < text.size()) flush(text.size());
  return out;
}

Word parse_word(std::string_view text, Presentation const& context) {
  Parser parser(Lexer(text, 1).run());
  Word w = parser.word(context);
  parser.expect_end();
  return w;
}

std::string format_word(Word const& w, Presentation const& context) {
  if (w.empty()) return "1";
  std::string out;
  for (Letter l : w) {
    if (!out.empty()) out += ' ';
    std::string const& name = context.generator_names().at(l.gen);
    if (l.exp > 0) {
      out += name;
    } else if (name.size() == 1
               && std::islower(static_cast<unsigned char>(name[0]))
               && !context.index_of(std::string(
                   1, static_cast<char>(std::toupper(name[0]))))) {
      out += static_cast<char>(std::toupper(name[0]));
    } else {
      out += name + "^-1";
    }
  }
  return out;
}

std::string format_presentation(Presentation const& p) {
  std::ostringstream os;
  os << "gens: ";
  for (std::size_t i = 0; i < p.num_generators(); ++i) {
    if (i) os << ", ";
    os << p.generator_names()[i];
  }
  os << "; rels:";
  for (std::size_t i = 0; i < p.relators().size(); ++i) {
    os << (i ? "; " : " ") << format_word(p.relators()[i], p);
  }
  os << '\n';
  return os.str();
}

// ---- JSON -----------------------------------------------------------------

nlohmann::json to_json(Presentation const& p) {
  nlohmann::json rels = nlohmann::json::array();
  for (auto const& r : p.relators()) {
    nlohmann::json w = nlohmann::json::array();
    for (Letter l : r) w.push_back({l.gen, static_cast<int>(l.exp)});
    rels.push_back(std::move(w));
  }
  return {{"generators", p.generator_names()}, {"relators", std::move(rels)}};
}

Presentation presentation_from_json(nlohmann::json const& j) {
  auto names = j.at("generators").get<std::vector<std::string>>();
  std::vector<Word> rels;
  for (auto const& w : j.at("relators")) {
    std::vector<Letter> letters;
    for (auto const& pair : w) {
      int exp = pair.at(1).get<int>();
      if (exp != 1 && exp != -1) throw InvalidInput("letter exponent must be +-1");
      letters.push_back(Letter{pair.at(0).get<std::uint32_t>(),
                               static_cast<std::int8_t>(exp)});
    }
    rels.emplace_back(std::move(letters));
  }
  return Presentation(std::move(names), std::move(rels));
}

GroupMap group_map_from_json(nlohmann::json const& j, Presentation source,
                             Presentation target) {
  auto const& obj = j.at("images");
  std::vector<Word> images;
  for (auto const& name : source.generator_names()) {
    if (!obj.contains(name)) {
      throw InvalidInput("map file has no image for generator '" + name + "'");
    }
    images.push_back(parse_word(obj.at(name).get<std::string>(), target));
  }
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!source.index_of(it.key())) {
      throw InvalidInput("map file names unknown source generator '"
                         + it.key() + "'");
    }
  }
  return GroupMap(std::move(source), std::move(target), std::move(images));
}

std::string read_file(std::string const& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace psolv
