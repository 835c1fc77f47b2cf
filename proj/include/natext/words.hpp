#pragma once

// Generators, free-monoid and free-group words, semigroup presentations and
// bounded equality in a presented semigroup.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "natext/error.hpp"
#include "natext/snf.hpp"

namespace natext {

using Letter = std::uint32_t;

/// Ordered list of distinct generator names.
class GeneratorSet {
 public:
  GeneratorSet() = default;

  explicit GeneratorSet(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.empty()) throw InvalidArgument("generator set must be non-empty");
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i].empty()) throw InvalidArgument("empty generator name");
      for (std::size_t j = 0; j < i; ++j)
        if (names_[i] == names_[j])
          throw InvalidArgument("duplicate generator name '" + names_[i] + "'");
    }
  }

  std::size_t size() const noexcept { return names_.size(); }
  std::vector<std::string> const& names() const noexcept { return names_; }
  std::string const& name(Letter i) const { return names_.at(i); }

  std::optional<Letter> index(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return static_cast<Letter>(i);
    return std::nullopt;
  }

  /// True when every name is a single character (words print without spaces).
  bool single_char() const {
    return std::all_of(names_.begin(), names_.end(),
                       [](auto const& s) { return s.size() == 1; });
  }

  bool operator==(GeneratorSet const&) const = default;

 private:
  std::vector<std::string> names_;
};

/// Element of the free monoid: a sequence of generator indices.  The empty
/// word is the adjoined identity.
struct Word {
  std::vector<Letter> letters;

  Word() = default;
  explicit Word(std::vector<Letter> l) : letters(std::move(l)) {}
  Word(std::initializer_list<Letter> l) : letters(l) {}

  std::size_t size() const noexcept { return letters.size(); }
  bool empty() const noexcept { return letters.empty(); }
  Letter operator[](std::size_t i) const { return letters[i]; }
  auto begin() const noexcept { return letters.begin(); }
  auto end() const noexcept { return letters.end(); }

  friend auto operator<=>(Word const&, Word const&) = default;
  friend bool operator==(Word const&, Word const&) = default;
};

inline Word operator*(Word const& u, Word const& v) {
  Word w = u;
  w.letters.insert(w.letters.end(), v.letters.begin(), v.letters.end());
  return w;
}

/// Length-lex order: shorter words first, ties broken lexicographically.
inline bool length_lex_less(Word const& u, Word const& v) {
  if (u.size() != v.size()) return u.size() < v.size();
  return u.letters < v.letters;
}

struct WordHash {
  std::size_t operator()(Word const& w) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto l : w.letters) h = (h ^ (l + 1)) * 1099511628211ull;
    return h;
  }
};

struct SignedLetter {
  Letter gen = 0;
  std::int8_t sign = 1;  // +1 or -1

  SignedLetter inverse() const { return {gen, static_cast<std::int8_t>(-sign)}; }
  friend auto operator<=>(SignedLetter const&, SignedLetter const&) = default;
  friend bool operator==(SignedLetter const&, SignedLetter const&) = default;
};

/// Element of the free group, not necessarily reduced.
struct SignedWord {
  std::vector<SignedLetter> letters;

  SignedWord() = default;
  explicit SignedWord(std::vector<SignedLetter> l) : letters(std::move(l)) {}
  SignedWord(std::initializer_list<SignedLetter> l) : letters(l) {}

  static SignedWord from_word(Word const& w) {
    SignedWord s;
    s.letters.reserve(w.size());
    for (auto l : w) s.letters.push_back({l, 1});
    return s;
  }

  std::size_t size() const noexcept { return letters.size(); }
  bool empty() const noexcept { return letters.empty(); }
  auto begin() const noexcept { return letters.begin(); }
  auto end() const noexcept { return letters.end(); }

  SignedWord inverse() const {
    SignedWord s;
    s.letters.reserve(letters.size());
    for (auto it = letters.rbegin(); it != letters.rend(); ++it)
      s.letters.push_back(it->inverse());
    return s;
  }

  /// True when every letter has positive sign.
  bool positive() const {
    return std::all_of(letters.begin(), letters.end(),
                       [](SignedLetter l) { return l.sign > 0; });
  }

  Word to_word() const {
    Word w;
    for (auto l : letters) {
      if (l.sign < 0) throw InvalidArgument("signed word has negative letters");
      w.letters.push_back(l.gen);
    }
    return w;
  }

  friend auto operator<=>(SignedWord const&, SignedWord const&) = default;
  friend bool operator==(SignedWord const&, SignedWord const&) = default;
};

inline SignedWord operator*(SignedWord const& u, SignedWord const& v) {
  SignedWord w = u;
  w.letters.insert(w.letters.end(), v.letters.begin(), v.letters.end());
  return w;
}

/// Free reduction: cancels adjacent g g^-1 and g^-1 g pairs.
inline SignedWord free_reduce(SignedWord const& w) {
  SignedWord out;
  out.letters.reserve(w.size());
  for (auto l : w.letters) {
    if (!out.letters.empty() && out.letters.back() == l.inverse())
      out.letters.pop_back();
    else
      out.letters.push_back(l);
  }
  return out;
}

inline bool is_reduced(SignedWord const& w) {
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w.letters[i] == w.letters[i - 1].inverse()) return false;
  return true;
}

/// Signed exponent sum of every generator.
inline std::vector<BigInt> exponent_sums(SignedWord const& w, std::size_t rank) {
  std::vector<BigInt> v(rank, 0);
  for (auto l : w) v.at(l.gen) += l.sign;
  return v;
}

inline std::vector<BigInt> letter_counts(Word const& w, std::size_t rank) {
  std::vector<BigInt> v(rank, 0);
  for (auto l : w) v.at(l) += 1;
  return v;
}

/// A semigroup presentation <B | R>+.
class SemigroupPresentation {
 public:
  using Relation = std::pair<Word, Word>;

  SemigroupPresentation() = default;

  explicit SemigroupPresentation(GeneratorSet gens, std::vector<Relation> rels = {},
                                 bool declared_commutative = false)
      : gens_(std::move(gens)),
        rels_(std::move(rels)),
        declared_commutative_(declared_commutative) {
    for (auto const& [u, v] : rels_) {
      if (u.empty() || v.empty())
        throw InvalidArgument("relation sides must be non-empty words");
      check_word(u);
      check_word(v);
    }
  }

  GeneratorSet const& generators() const noexcept { return gens_; }
  std::vector<Relation> const& relations() const noexcept { return rels_; }
  std::size_t rank() const noexcept { return gens_.size(); }
  bool declared_commutative() const noexcept { return declared_commutative_; }

  void check_word(Word const& w) const {
    for (auto l : w)
      if (l >= gens_.size()) throw InvalidArgument("letter index out of range");
  }

  bool is_free() const noexcept { return rels_.empty(); }

  /// True iff xy = yx is a relation (in either orientation).
  bool has_commutator(Letter x, Letter y) const {
    for (auto const& [u, v] : rels_)
      if ((u == Word{x, y} && v == Word{y, x}) || (u == Word{y, x} && v == Word{x, y}))
        return true;
    return false;
  }

  /// Commutative: declared, single generator, or every pair has its commutator.
  bool is_commutative() const {
    if (declared_commutative_ || gens_.size() == 1) return true;
    for (Letter i = 0; i < gens_.size(); ++i)
      for (Letter j = i + 1; j < gens_.size(); ++j)
        if (!has_commutator(i, j)) return false;
    return true;
  }

  /// Presentation of the free commutative monoid N^d (d >= 1).
  static SemigroupPresentation free_commutative(std::vector<std::string> names) {
    GeneratorSet g(std::move(names));
    std::vector<Relation> rels;
    for (Letter i = 0; i < g.size(); ++i)
      for (Letter j = i + 1; j < g.size(); ++j) rels.push_back({Word{i, j}, Word{j, i}});
    return SemigroupPresentation(std::move(g), std::move(rels));
  }

  static SemigroupPresentation free(std::vector<std::string> names) {
    return SemigroupPresentation(GeneratorSet(std::move(names)));
  }

  bool operator==(SemigroupPresentation const&) const = default;

 private:
  GeneratorSet gens_;
  std::vector<Relation> rels_;
  bool declared_commutative_ = false;
};

// --- normal forms inside the two semigroups with a decidable word problem ---

/// Normal form of `w` in S: the word itself in a free monoid, the sorted word
/// in a commutative presentation whose only relations are commutators, and the
/// word unchanged otherwise (no normal form is attempted in that case).
inline Word normal_form(SemigroupPresentation const& p, Word w) {
  if (!p.is_free() && p.is_commutative()) std::sort(w.letters.begin(), w.letters.end());
  return w;
}

/// True iff `normal_form` decides equality in S.
inline bool has_exact_normal_form(SemigroupPresentation const& p) {
  if (p.is_free()) return true;
  if (!p.is_commutative()) return false;
  for (auto const& [u, v] : p.relations())
    if (!(u.size() == 2 && v.size() == 2 && u[0] == v[1] && u[1] == v[0])) return false;
  return true;
}

/// All s with t * s == w in S (at most one in the supported semigroups).
inline std::optional<Word> left_quotient(SemigroupPresentation const& p, Word const& t,
                                         Word const& w) {
  if (!p.is_free() && p.is_commutative()) {
    auto ct = letter_counts(t, p.rank());
    auto cw = letter_counts(w, p.rank());
    Word s;
    for (Letter i = 0; i < p.rank(); ++i) {
      if (cw[i] < ct[i]) return std::nullopt;
      auto k = static_cast<std::size_t>(cw[i] - ct[i]);
      s.letters.insert(s.letters.end(), k, i);
    }
    return s;
  }
  if (t.size() > w.size()) return std::nullopt;
  if (!std::equal(t.begin(), t.end(), w.begin())) return std::nullopt;
  return Word(std::vector<Letter>(w.begin() + static_cast<std::ptrdiff_t>(t.size()), w.end()));
}

// --- text formats ---

namespace detail {
inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

inline std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

// Greedy longest-match split of a token into generator names.
inline std::vector<Letter> split_token(GeneratorSet const& g, std::string_view tok) {
  std::vector<Letter> out;
  std::size_t pos = 0;
  while (pos < tok.size()) {
    std::size_t best_len = 0;
    Letter best = 0;
    for (Letter i = 0; i < g.size(); ++i) {
      auto const& n = g.name(i);
      if (n.size() > best_len && tok.substr(pos, n.size()) == n) {
        best_len = n.size();
        best = i;
      }
    }
    if (best_len == 0)
      throw ParseError("cannot split '" + std::string(tok) + "' into generators");
    out.push_back(best);
    pos += best_len;
  }
  return out;
}
}  // namespace detail

/// Parses a positive word: whitespace-separated tokens, each a generator name
/// or a concatenation of names.  "1" and the empty string denote the identity.
inline Word parse_word(GeneratorSet const& g, std::string_view text) {
  Word w;
  for (auto const& tok : detail::split_ws(text)) {
    if (tok == "1" && !g.index("1")) continue;
    if (auto i = g.index(tok)) {
      w.letters.push_back(*i);
      continue;
    }
    auto part = detail::split_token(g, tok);
    w.letters.insert(w.letters.end(), part.begin(), part.end());
  }
  return w;
}

/// Parses a signed word.  Tokens are `x`, `x^k` with k a (possibly negative)
/// integer, or concatenations of positive names.
inline SignedWord parse_signed_word(GeneratorSet const& g, std::string_view text) {
  SignedWord w;
  for (auto const& tok : detail::split_ws(text)) {
    if (tok == "1" && !g.index("1")) continue;
    auto caret = tok.find('^');
    if (caret == std::string::npos) {
      for (auto l : parse_word(g, tok)) w.letters.push_back({l, 1});
      continue;
    }
    auto name = tok.substr(0, caret);
    auto gen = g.index(name);
    if (!gen) throw ParseError("unknown generator '" + name + "'");
    long k = 0;
    try {
      k = std::stol(tok.substr(caret + 1));
    } catch (std::exception const&) {
      throw ParseError("bad exponent in '" + tok + "'");
    }
    std::int8_t sign = k < 0 ? -1 : 1;
    for (long i = 0; i < (k < 0 ? -k : k); ++i) w.letters.push_back({*gen, sign});
  }
  return w;
}

inline std::string format_word(GeneratorSet const& g, Word const& w) {
  if (w.empty()) return "1";
  std::string out;
  bool const compact = g.single_char();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i > 0 && !compact) out += ' ';
    out += g.name(w[i]);
  }
  return out;
}

inline std::string format_signed_word(GeneratorSet const& g, SignedWord const& w) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i > 0) out += ' ';
    out += g.name(w.letters[i].gen);
    if (w.letters[i].sign < 0) out += "^-1";
  }
  return out;
}

/// Parses `gens: a b; rels: ab = b b a; ba = ab;`.  A clause `commutative`
/// declares commutativity without listing commutators.
inline SemigroupPresentation parse_presentation(std::string_view text) {
  std::vector<std::string> clauses;
  {
    std::string cur;
    for (char c : text) {
      if (c == ';') {
        clauses.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    clauses.push_back(cur);
  }

  std::optional<GeneratorSet> gens;
  std::vector<std::string> rel_texts;
  bool commutative = false;
  for (auto const& raw : clauses) {
    auto clause = detail::trim(raw);
    if (clause.empty()) continue;
    if (clause.rfind("gens:", 0) == 0) {
      if (gens) throw ParseError("duplicate gens clause");
      gens = GeneratorSet(detail::split_ws(clause.substr(5)));
    } else if (clause.rfind("rels:", 0) == 0) {
      auto rest = detail::trim(clause.substr(5));
      if (!rest.empty()) rel_texts.push_back(rest);
    } else if (clause == "commutative") {
      commutative = true;
    } else {
      rel_texts.push_back(clause);
    }
  }
  if (!gens) throw ParseError("missing gens clause");

  std::vector<SemigroupPresentation::Relation> rels;
  for (auto const& r : rel_texts) {
    auto eq = r.find('=');
    if (eq == std::string::npos || r.find('=', eq + 1) != std::string::npos)
      throw ParseError("relation must have exactly one '=': " + r);
    auto u = parse_word(*gens, r.substr(0, eq));
    auto v = parse_word(*gens, r.substr(eq + 1));
    if (u.empty() || v.empty()) throw ParseError("empty relation side: " + r);
    rels.emplace_back(std::move(u), std::move(v));
  }
  return SemigroupPresentation(std::move(*gens), std::move(rels), commutative);
}

inline std::string format_presentation(SemigroupPresentation const& p) {
  std::string out = "gens:";
  for (auto const& n : p.generators().names()) out += " " + n;
  out += "; rels:";
  bool first = true;
  for (auto const& [u, v] : p.relations()) {
    out += (first ? " " : "; ") + format_word(p.generators(), u) + " = " +
           format_word(p.generators(), v);
    first = false;
  }
  out += ";";
  if (p.declared_commutative()) out += " commutative;";
  return out;
}

// --- bounded equality ---

enum class TriState { Equal, NotEqualProven, Unknown };

inline char const* to_string(TriState t) {
  switch (t) {
    case TriState::Equal: return "Equal";
    case TriState::NotEqualProven: return "NotEqualProven";
    case TriState::Unknown: return "Unknown";
  }
  return "?";
}

/// A homomorphic image of S in which equality is computable.  Distinct images
/// always separate words; equal images identify them only when `faithful`.
struct Realization {
  std::function<bool(Word const&, Word const&)> same_image;
  bool faithful = false;
};

struct EqualityOptions {
  std::size_t slack = 4;
  std::optional<Realization> realization;
};

/// Relation lattice of the abelianization: rows are count(u) - count(v).
inline Matrix<BigInt> relation_lattice(SemigroupPresentation const& p) {
  Matrix<BigInt> m(p.relations().size(), p.rank());
  for (std::size_t r = 0; r < p.relations().size(); ++r) {
    auto const& [u, v] = p.relations()[r];
    for (auto l : u) m(r, l) += 1;
    for (auto l : v) m(r, l) -= 1;
  }
  return m;
}

/// True iff the abelianization separates u and v.
inline bool abelianization_separates(SemigroupPresentation const& p, Word const& u,
                                     Word const& v) {
  auto cu = letter_counts(u, p.rank());
  auto cv = letter_counts(v, p.rank());
  std::vector<BigInt> d(p.rank());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = cu[i] - cv[i];
  return !in_row_lattice(relation_lattice(p), d);
}

namespace detail {
// All single-rewrite neighbours of w of length <= max_len.
inline void rewrite_neighbours(SemigroupPresentation const& p, Word const& w,
                               std::size_t max_len, std::vector<Word>& out) {
  out.clear();
  for (auto const& [l0, r0] : p.relations()) {
    for (int dir = 0; dir < 2; ++dir) {
      auto const& from = dir == 0 ? l0 : r0;
      auto const& to = dir == 0 ? r0 : l0;
      if (from.size() > w.size()) continue;
      if (w.size() - from.size() + to.size() > max_len) continue;
      for (std::size_t i = 0; i + from.size() <= w.size(); ++i) {
        if (!std::equal(from.begin(), from.end(), w.begin() + static_cast<std::ptrdiff_t>(i)))
          continue;
        Word n;
        n.letters.reserve(w.size() - from.size() + to.size());
        n.letters.insert(n.letters.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
        n.letters.insert(n.letters.end(), to.begin(), to.end());
        n.letters.insert(n.letters.end(),
                         w.begin() + static_cast<std::ptrdiff_t>(i + from.size()), w.end());
        out.push_back(std::move(n));
      }
    }
  }
}
}  // namespace detail

/// Bounded equality in <B|R>+.  Bidirectional breadth-first search over the
/// rewrite graph restricted to words of length <= max(|u|,|v|) + slack, with
/// `budget` bounding the number of expanded words.  NotEqualProven is only
/// returned on an exact separation: the abelianization, an attached
/// realization, or exhaustion of a finite class (length-preserving relations).
inline TriState words_equal_bounded(SemigroupPresentation const& p, Word const& u,
                                    Word const& v, std::size_t budget,
                                    EqualityOptions const& opts = {}) {
  p.check_word(u);
  p.check_word(v);
  if (budget == 0) throw InvalidArgument("budget must be >= 1");
  if (u == v) return TriState::Equal;
  if (p.is_free()) return TriState::NotEqualProven;
  if (abelianization_separates(p, u, v)) return TriState::NotEqualProven;
  if (opts.realization) {
    if (!opts.realization->same_image(u, v)) return TriState::NotEqualProven;
    if (opts.realization->faithful) return TriState::Equal;
  }

  bool length_preserving = true;
  for (auto const& [l, r] : p.relations()) length_preserving = length_preserving && l.size() == r.size();
  std::size_t const max_len =
      length_preserving ? u.size() : std::max(u.size(), v.size()) + opts.slack;
  if (length_preserving && u.size() != v.size()) return TriState::NotEqualProven;

  std::unordered_set<Word, WordHash> seen[2];
  std::deque<Word> frontier[2];
  seen[0].insert(u);
  seen[1].insert(v);
  frontier[0].push_back(u);
  frontier[1].push_back(v);

  std::size_t expanded = 0;
  std::vector<Word> nbrs;
  while (!frontier[0].empty() && !frontier[1].empty()) {
    int side = frontier[0].size() <= frontier[1].size() ? 0 : 1;
    // expand one whole layer of the smaller side
    std::size_t layer = frontier[side].size();
    for (std::size_t k = 0; k < layer; ++k) {
      if (expanded++ >= budget) return TriState::Unknown;
      Word w = std::move(frontier[side].front());
      frontier[side].pop_front();
      detail::rewrite_neighbours(p, w, max_len, nbrs);
      for (auto& n : nbrs) {
        if (seen[1 - side].count(n)) return TriState::Equal;
        if (seen[side].insert(n).second) frontier[side].push_back(std::move(n));
      }
    }
  }
  // one side's class was exhausted inside the length bound
  return length_preserving ? TriState::NotEqualProven : TriState::Unknown;
}

/// All positive words of length exactly `len`, in lexicographic order.
inline std::vector<Word> words_of_length(std::size_t rank, std::size_t len) {
  std::vector<Word> out;
  Word w(std::vector<Letter>(len, 0));
  while (true) {
    out.push_back(w);
    std::size_t i = len;
    while (i > 0) {
      --i;
      if (++w.letters[i] < rank) break;
      w.letters[i] = 0;
      if (i == 0) return out;
    }
    if (len == 0) return out;
  }
}

/// All positive words of length <= max_len in length-lex order.
inline std::vector<Word> words_up_to(std::size_t rank, std::size_t max_len) {
  std::vector<Word> out;
  for (std::size_t l = 0; l <= max_len; ++l) {
    auto layer = words_of_length(rank, l);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

}  // namespace natext
