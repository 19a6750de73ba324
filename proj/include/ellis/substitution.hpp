// Constant-length substitutions over a finite alphabet.
//
// Letters are stored as indices 0..s-1; the original symbols are kept in the
// Alphabet for input and output only. Rule words are index vectors of a common
// length l >= 2. A substitution is equivalently given by its l column maps,
// theta_j(a) = letter j of rule(a), and it is bijective when every column map
// is a permutation.

#ifndef ELLIS_SUBSTITUTION_HPP_
#define ELLIS_SUBSTITUTION_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "error.hpp"
#include "json.hpp"
#include "permutation.hpp"

namespace ellis {

  using word_type = std::vector<letter_type>;

  // Blocks of more than this many letters are never materialised.
  inline constexpr std::size_t max_block_letters = 10'000'000;

  class Alphabet {
   public:
    Alphabet() = default;

    explicit Alphabet(std::vector<std::string> symbols)
        : _symbols(std::move(symbols)) {
      if (_symbols.size() < 2) {
        throw ValidationError("an alphabet needs at least two letters");
      }
      for (std::size_t i = 0; i < _symbols.size(); ++i) {
        if (!_index.emplace(_symbols[i], static_cast<letter_type>(i)).second) {
          throw ValidationError("duplicate letter '" + _symbols[i] + "'");
        }
      }
    }

    std::size_t size() const noexcept {
      return _symbols.size();
    }
    std::vector<std::string> const& symbols() const noexcept {
      return _symbols;
    }
    std::string const& symbol(letter_type i) const {
      return _symbols.at(i);
    }
    std::optional<letter_type> index_of(std::string const& sym) const {
      auto it = _index.find(sym);
      if (it == _index.end()) {
        return std::nullopt;
      }
      return it->second;
    }

    friend bool operator==(Alphabet const& a, Alphabet const& b) {
      return a._symbols == b._symbols;
    }

   private:
    std::vector<std::string>                     _symbols;
    std::unordered_map<std::string, letter_type> _index;
  };

  using ColumnMap = std::vector<letter_type>;

  class Substitution {
   public:
    Substitution() = default;

    Substitution(Alphabet alphabet, std::vector<word_type> rules)
        : _alphabet(std::move(alphabet)), _rules(std::move(rules)) {
      if (_rules.size() != _alphabet.size()) {
        throw ValidationError("expected one rule per letter, got "
                              + std::to_string(_rules.size()) + " rules for "
                              + std::to_string(_alphabet.size()) + " letters");
      }
      _length = _rules[0].size();
      if (_length < 2) {
        throw ValidationError(
            "rule length must be at least 2 (length-1 substitutions are "
            "single permutations)");
      }
      for (std::size_t a = 0; a < _rules.size(); ++a) {
        if (_rules[a].size() != _length) {
          throw ValidationError("rule for '" + _alphabet.symbol(a)
                                + "' has length "
                                + std::to_string(_rules[a].size())
                                + ", expected " + std::to_string(_length));
        }
        for (auto x : _rules[a]) {
          if (x >= _alphabet.size()) {
            throw ValidationError("rule letter index out of range");
          }
        }
      }
    }

    Alphabet const& alphabet() const noexcept {
      return _alphabet;
    }
    std::size_t size() const noexcept {
      return _alphabet.size();
    }
    std::size_t length() const noexcept {
      return _length;
    }
    word_type const& rule(letter_type a) const {
      return _rules.at(a);
    }
    std::vector<word_type> const& rules() const noexcept {
      return _rules;
    }

    // theta(w), letterwise concatenation.
    word_type apply(word_type const& w) const {
      word_type out;
      out.reserve(w.size() * _length);
      for (auto x : w) {
        out.insert(out.end(), _rules[x].begin(), _rules[x].end());
      }
      return out;
    }

    friend bool operator==(Substitution const& a, Substitution const& b) {
      return a._alphabet == b._alphabet && a._rules == b._rules;
    }

   private:
    Alphabet               _alphabet;
    std::vector<word_type> _rules;
    std::size_t            _length = 0;
  };

  ////////////////////////////////////////////////////////////////////////
  // Parsing and serialisation
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    // Decodes one UTF-8 code point starting at pos; returns the code point and
    // its byte length.
    inline std::pair<char32_t, std::size_t> decode_utf8(std::string_view s,
                                                        std::size_t pos) {
      auto const c = static_cast<unsigned char>(s[pos]);
      std::size_t len = c < 0x80 ? 1 : (c >> 5) == 0x6 ? 2 : (c >> 4) == 0xE ? 3
                                   : (c >> 3) == 0x1E ? 4 : 0;
      if (len == 0 || pos + len > s.size()) {
        return {0xFFFD, 1};
      }
      char32_t cp = len == 1 ? c : len == 2 ? c & 0x1F : len == 3 ? c & 0x0F
                                                                  : c & 0x07;
      for (std::size_t k = 1; k < len; ++k) {
        auto const cc = static_cast<unsigned char>(s[pos + k]);
        if ((cc >> 6) != 0x2) {
          return {0xFFFD, 1};
        }
        cp = (cp << 6) | (cc & 0x3F);
      }
      return {cp, len};
    }

    inline bool is_letter_code_point(char32_t cp) {
      if (cp < 0x80) {
        return (cp >= '0' && cp <= '9') || (cp >= 'a' && cp <= 'z')
               || (cp >= 'A' && cp <= 'Z');
      }
      if (cp == 0xFFFD || (cp >= 0x80 && cp <= 0xBF) || cp == 0xD7
          || cp == 0xF7) {
        return false;
      }
      if ((cp >= 0x2000 && cp <= 0x2BFF) || (cp >= 0x3000 && cp <= 0x303F)) {
        return false;
      }
      return true;
    }

    inline bool is_blank(char32_t cp) {
      return cp == ' ' || cp == '\t' || cp == '\r' || cp == 0xA0;
    }
  }  // namespace detail

  // Grammar, one rule per line:
  //
  //   <letter> -> <word>      (the arrow may also be written U+2192)
  //
  // '#' starts a comment and blank lines are ignored. Letters are single
  // alphanumeric code points; the alphabet is ordered by first rule.
  inline Substitution parse_substitution(std::string_view source) {
    std::vector<std::string> symbols;
    std::vector<std::string> words_raw;
    std::vector<std::vector<std::pair<std::string, std::size_t>>> words;
    std::vector<std::size_t> rule_line;
    std::unordered_map<std::string, std::size_t> seen;

    std::size_t line_no = 0;
    std::size_t start   = 0;
    while (start <= source.size()) {
      auto end = source.find('\n', start);
      if (end == std::string_view::npos) {
        end = source.size();
      }
      auto line = source.substr(start, end - start);
      ++line_no;
      start = end + 1;

      // tokenise into code points with 1-based columns
      std::vector<std::pair<std::string, std::size_t>> toks;
      std::vector<char32_t>                            cps;
      for (std::size_t pos = 0, col = 1; pos < line.size(); ++col) {
        auto [cp, len] = detail::decode_utf8(line, pos);
        if (cp == '#') {
          break;
        }
        if (!detail::is_blank(cp)) {
          toks.emplace_back(std::string(line.substr(pos, len)), col);
          cps.push_back(cp);
        }
        pos += len;
      }
      if (toks.empty()) {
        if (end == source.size()) {
          break;
        }
        continue;
      }
      std::size_t k = 0;
      if (!detail::is_letter_code_point(cps[0])) {
        throw ParseError("expected a letter, found '" + toks[0].first + "'",
                         line_no, toks[0].second);
      }
      auto lhs = toks[0].first;
      k        = 1;
      if (k < toks.size() && cps[k] == '-' && k + 1 < toks.size()
          && cps[k + 1] == '>') {
        k += 2;
      } else if (k < toks.size() && cps[k] == 0x2192) {
        k += 1;
      } else {
        std::size_t col = k < toks.size() ? toks[k].second : line.size() + 1;
        throw ParseError("expected '->' after '" + lhs + "'", line_no, col);
      }
      if (k == toks.size()) {
        throw ParseError("empty rule for '" + lhs + "'", line_no,
                         line.size() + 1);
      }
      std::vector<std::pair<std::string, std::size_t>> word;
      for (; k < toks.size(); ++k) {
        if (!detail::is_letter_code_point(cps[k])) {
          throw ParseError("unexpected '" + toks[k].first + "' in rule word",
                           line_no, toks[k].second);
        }
        word.push_back(toks[k]);
      }
      if (seen.count(lhs) != 0) {
        throw ParseError("duplicate rule for " + lhs, line_no,
                         toks[0].second);
      }
      seen.emplace(lhs, symbols.size());
      symbols.push_back(lhs);
      words.push_back(std::move(word));
      rule_line.push_back(line_no);
      if (end == source.size()) {
        break;
      }
    }
    if (symbols.empty()) {
      throw ParseError("no rules found");
    }
    // every letter used on a right hand side must have a rule
    std::vector<word_type> rules(symbols.size());
    for (std::size_t a = 0; a < words.size(); ++a) {
      for (auto const& [sym, col] : words[a]) {
        auto it = seen.find(sym);
        if (it == seen.end()) {
          throw ParseError("missing rule for letter " + sym
                               + " used in the rule for " + symbols[a],
                           rule_line[a], col);
        }
        rules[a].push_back(static_cast<letter_type>(it->second));
      }
    }
    if (symbols.size() < 2) {
      if (rules[0].size() < 2) {
        throw ValidationError(
            "rule length must be at least 2 (length-1 substitutions are "
            "single permutations)");
      }
      throw ValidationError("an alphabet needs at least two letters");
    }
    return Substitution(Alphabet(std::move(symbols)), std::move(rules));
  }

  inline std::string to_text(Substitution const& sub) {
    std::string out;
    for (letter_type a = 0; a < sub.size(); ++a) {
      out += sub.alphabet().symbol(a) + " -> ";
      for (auto x : sub.rule(a)) {
        out += sub.alphabet().symbol(x);
      }
      out += '\n';
    }
    return out;
  }

  inline std::string word_to_string(word_type const& w, Alphabet const& al) {
    std::string out;
    for (auto x : w) {
      out += al.symbol(x);
    }
    return out;
  }

  inline nlohmann::json to_json(Substitution const& sub) {
    nlohmann::json j;
    j["alphabet"] = sub.alphabet().symbols();
    j["rules"]    = nlohmann::json::object();
    for (letter_type a = 0; a < sub.size(); ++a) {
      j["rules"][sub.alphabet().symbol(a)]
          = word_to_string(sub.rule(a), sub.alphabet());
    }
    return j;
  }

  // {"alphabet": [...], "rules": {"a": "abba", ...}}
  inline Substitution substitution_from_json(nlohmann::json const& j) {
    if (!j.is_object() || !j.contains("alphabet") || !j.contains("rules")
        || !j["alphabet"].is_array() || !j["rules"].is_object()) {
      throw ParseError(
          "substitution JSON needs an \"alphabet\" array and a \"rules\" "
          "object");
    }
    std::vector<std::string> symbols;
    for (auto const& x : j["alphabet"]) {
      if (!x.is_string()) {
        throw ParseError("alphabet entries must be strings");
      }
      symbols.push_back(x.get<std::string>());
    }
    Alphabet al(symbols);
    std::vector<word_type> rules(al.size());
    std::vector<bool>      have(al.size(), false);
    for (auto const& [key, val] : j["rules"].items()) {
      auto a = al.index_of(key);
      if (!a) {
        throw ValidationError("rule for unknown letter " + key);
      }
      if (!val.is_string()) {
        throw ParseError("rule words must be strings");
      }
      auto const w = val.get<std::string>();
      for (std::size_t pos = 0; pos < w.size();) {
        auto [cp, len] = detail::decode_utf8(w, pos);
        auto x         = al.index_of(w.substr(pos, len));
        if (!x) {
          throw ValidationError("unknown letter " + w.substr(pos, len)
                                + " in the rule for " + key);
        }
        rules[*a].push_back(*x);
        pos += len;
      }
      have[*a] = true;
    }
    for (std::size_t a = 0; a < al.size(); ++a) {
      if (!have[a]) {
        throw ValidationError("missing rule for letter " + al.symbol(a));
      }
    }
    return Substitution(std::move(al), std::move(rules));
  }

  // Accepts either the line grammar or the JSON form.
  inline Substitution read_substitution(std::string_view source) {
    auto first = source.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && source[first] == '{') {
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(source);
      } catch (nlohmann::json::parse_error const& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
      }
      return substitution_from_json(j);
    }
    return parse_substitution(source);
  }

  ////////////////////////////////////////////////////////////////////////
  // Columns, composition, powers
  ////////////////////////////////////////////////////////////////////////

  inline std::vector<ColumnMap> columns(Substitution const& sub) {
    std::vector<ColumnMap> cols(sub.length(), ColumnMap(sub.size()));
    for (letter_type a = 0; a < sub.size(); ++a) {
      for (std::size_t j = 0; j < sub.length(); ++j) {
        cols[j][a] = sub.rule(a)[j];
      }
    }
    return cols;
  }

  inline bool is_bijective(Substitution const& sub) {
    for (auto const& col : columns(sub)) {
      std::vector<bool> hit(sub.size(), false);
      for (auto x : col) {
        hit[x] = true;
      }
      if (std::find(hit.begin(), hit.end(), false) != hit.end()) {
        return false;
      }
    }
    return true;
  }

  // Column maps as permutations; throws if the substitution is not bijective.
  inline std::vector<Permutation> column_permutations(Substitution const& sub) {
    if (!is_bijective(sub)) {
      throw ValidationError("substitution is not bijective");
    }
    std::vector<Permutation> out;
    for (auto& col : columns(sub)) {
      out.emplace_back(std::move(col));
    }
    return out;
  }

  inline void check_block_size(std::size_t length, std::size_t n) {
    std::size_t total = 1;
    for (std::size_t k = 0; k < n; ++k) {
      if (total > max_block_letters / length) {
        throw ResourceError("level " + std::to_string(n) + " of a length-"
                            + std::to_string(length)
                            + " substitution exceeds "
                            + std::to_string(max_block_letters) + " letters");
      }
      total *= length;
    }
  }

  // outer(inner(a)) for every letter a.
  inline Substitution compose(Substitution const& outer,
                              Substitution const& inner) {
    if (!(outer.alphabet() == inner.alphabet())) {
      throw ValidationError("cannot compose substitutions over different "
                            "alphabets");
    }
    if (outer.length() > max_block_letters / inner.length()) {
      throw ResourceError("composed rule length exceeds "
                          + std::to_string(max_block_letters) + " letters");
    }
    std::vector<word_type> rules;
    for (letter_type a = 0; a < inner.size(); ++a) {
      rules.push_back(outer.apply(inner.rule(a)));
    }
    return Substitution(outer.alphabet(), std::move(rules));
  }

  inline Substitution power(Substitution const& sub, std::size_t n) {
    if (n == 0) {
      throw ValidationError("power exponent must be at least 1");
    }
    check_block_size(sub.length(), n);
    Substitution r = sub;
    for (std::size_t k = 1; k < n; ++k) {
      r = compose(sub, r);
    }
    return r;
  }

  // theta^n(a); level 0 is the single letter a.
  inline word_type iterate(Substitution const& sub, letter_type a,
                           std::size_t n) {
    check_block_size(sub.length(), n);
    word_type w{a};
    for (std::size_t k = 0; k < n; ++k) {
      w = sub.apply(w);
    }
    return w;
  }

  ////////////////////////////////////////////////////////////////////////
  // Primitivity and allowed two-letter words
  ////////////////////////////////////////////////////////////////////////

  // True iff some power of the letter-occurrence matrix is strictly positive.
  // By Wielandt's bound it suffices to look at powers up to (s-1)^2 + 1.
  inline bool is_primitive(Substitution const& sub) {
    std::size_t const s = sub.size();
    using matrix        = std::vector<std::vector<bool>>;
    matrix occ(s, std::vector<bool>(s, false));
    for (letter_type a = 0; a < s; ++a) {
      for (auto x : sub.rule(a)) {
        occ[a][x] = true;
      }
    }
    matrix      pw    = occ;
    std::size_t bound = (s - 1) * (s - 1) + 1;
    for (std::size_t k = 1; k <= bound; ++k) {
      bool positive = true;
      for (auto const& row : pw) {
        positive = positive
                   && std::find(row.begin(), row.end(), false) == row.end();
      }
      if (positive) {
        return true;
      }
      matrix next(s, std::vector<bool>(s, false));
      for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t m = 0; m < s; ++m) {
          if (!pw[i][m]) {
            continue;
          }
          for (std::size_t j = 0; j < s; ++j) {
            if (occ[m][j]) {
              next[i][j] = true;
            }
          }
        }
      }
      pw = std::move(next);
    }
    return false;
  }

  using TwoWord = std::pair<letter_type, letter_type>;

  // The allowed two-letter words (a, b), sorted. For a simplified
  // substitution these label the fixed points a.b of the singular fibre.
  class TwoWordFiber {
   public:
    TwoWordFiber() = default;
    explicit TwoWordFiber(std::set<TwoWord> const& words)
        : _words(words.begin(), words.end()) {}

    std::size_t size() const noexcept {
      return _words.size();
    }
    std::vector<TwoWord> const& words() const noexcept {
      return _words;
    }
    TwoWord const& operator[](std::size_t i) const {
      return _words[i];
    }
    std::optional<std::size_t> index_of(TwoWord const& w) const {
      auto it = std::lower_bound(_words.begin(), _words.end(), w);
      if (it == _words.end() || *it != w) {
        return std::nullopt;
      }
      return static_cast<std::size_t>(it - _words.begin());
    }
    std::size_t index_of(letter_type a, letter_type b) const {
      auto i = index_of(TwoWord(a, b));
      if (!i) {
        throw InternalError("two-letter word is not allowed");
      }
      return *i;
    }
    std::string label(std::size_t i, Alphabet const& al) const {
      return al.symbol(_words[i].first) + "." + al.symbol(_words[i].second);
    }

    friend bool operator==(TwoWordFiber const&, TwoWordFiber const&) = default;

   private:
    std::vector<TwoWord> _words;
  };

  inline TwoWord junction(Substitution const& sub, TwoWord const& w) {
    return {sub.rule(w.first).back(), sub.rule(w.second).front()};
  }

  inline TwoWordFiber allowed_two_words(Substitution const& sub) {
    if (!is_primitive(sub)) {
      throw ValidationError("allowed two-letter words need a primitive "
                            "substitution");
    }
    std::set<TwoWord> words;
    for (letter_type a = 0; a < sub.size(); ++a) {
      auto const& r = sub.rule(a);
      for (std::size_t j = 0; j + 1 < r.size(); ++j) {
        words.emplace(r[j], r[j + 1]);
      }
    }
    std::vector<TwoWord> todo(words.begin(), words.end());
    while (!todo.empty()) {
      auto w = junction(sub, todo.back());
      todo.pop_back();
      if (words.insert(w).second) {
        todo.push_back(w);
      }
    }
    return TwoWordFiber(words);
  }

  ////////////////////////////////////////////////////////////////////////
  // Simplification
  ////////////////////////////////////////////////////////////////////////

  inline bool every_rule_contains_every_letter(Substitution const& sub) {
    for (auto const& r : sub.rules()) {
      std::vector<bool> hit(sub.size(), false);
      for (auto x : r) {
        hit[x] = true;
      }
      if (std::find(hit.begin(), hit.end(), false) != hit.end()) {
        return false;
      }
    }
    return true;
  }

  // Both simplified conditions: first and last columns are the identity (so
  // every periodic point is fixed) and every rule word contains every letter.
  inline bool is_simplified(Substitution const& sub) {
    auto const cols = columns(sub);
    for (letter_type a = 0; a < sub.size(); ++a) {
      if (cols.front()[a] != a || cols.back()[a] != a) {
        return false;
      }
    }
    return every_rule_contains_every_letter(sub);
  }

  struct Simplification {
    Substitution substitution;
    std::size_t  exponent;
    std::size_t  junction_period;  // lcm of junction-map cycle lengths
  };

  // theta^n with n = M * m minimal, where M is the lcm of the cycle lengths
  // of the junction map (a,b) -> (theta_{l-1}(a), theta_0(b)) on the allowed
  // two-words and m is the least factor making every rule word contain every
  // letter.
  inline Simplification simplify(Substitution const& sub) {
    if (!is_bijective(sub)) {
      throw ValidationError("substitution is not bijective");
    }
    if (!is_primitive(sub)) {
      throw ValidationError("substitution is not primitive");
    }
    auto const  fiber = allowed_two_words(sub);
    std::size_t M     = 1;
    for (auto const& w : fiber.words()) {
      std::size_t len = 1;
      for (auto x = junction(sub, w); x != w; x = junction(sub, x)) {
        ++len;
      }
      M = std::lcm(M, len);
    }
    auto const base = power(sub, M);
    auto       cur  = base;
    std::size_t m   = 1;
    while (!every_rule_contains_every_letter(cur)) {
      ++m;
      check_block_size(sub.length(), M * m);
      cur = compose(base, cur);
    }
    if (!is_simplified(cur)) {
      throw InternalError("power " + std::to_string(M * m)
                          + " does not satisfy the simplified conditions");
    }
    auto const f = allowed_two_words(cur);
    for (auto const& w : f.words()) {
      if (junction(cur, w) != w) {
        throw InternalError("junction map of the simplified power is not "
                            "the identity");
      }
    }
    return {std::move(cur), M * m, M};
  }

  // For a simplified substitution the allowed two-words are exactly the
  // fixed points a.b.
  inline TwoWordFiber fixed_points(Substitution const& sub) {
    if (!is_simplified(sub)) {
      throw ValidationError("fixed points are indexed by two-words only for "
                            "simplified substitutions");
    }
    return allowed_two_words(sub);
  }

  enum class Side { left, right };

  // theta^n(a). With side == right the block occupies positions [0, l^n) of
  // a fixed point whose right letter is a; with side == left it occupies
  // [-l^n, 0) of a fixed point whose left letter is a. The letters are the
  // same either way.
  inline word_type fixed_point_block(Substitution const& sub, letter_type a,
                                     std::size_t level, Side side = Side::right) {
    (void) side;
    if (!is_simplified(sub)) {
      throw ValidationError("fixed point blocks need a simplified "
                            "substitution");
    }
    return iterate(sub, a, level);
  }

}  // namespace ellis

#endif  // ELLIS_SUBSTITUTION_HPP_
