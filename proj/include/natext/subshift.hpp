#pragma once

// S-subshifts over a finite alphabet, described by forbidden patterns,
// per-generator nearest-neighbour relations, or a coset rule over a finite
// group.  Conventions: S acts by (s.x)(t) = x(ts), so a forbidden pattern with
// domain D is tested at every placement {t s : t in D}, and a nearest-neighbour
// relation for generator s constrains the pairs (x(t), x(s t)).
//
// Membership in the language of a subshift is undecidable in general.  Every
// "admissible" below means locally admissible: no forbidden occurrence lies
// entirely inside the finite domain at hand.  A locally admissible pattern
// need not extend to a configuration.

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "natext/affine.hpp"
#include "natext/csp.hpp"
#include "natext/error.hpp"
#include "natext/finite_group.hpp"
#include "natext/snf.hpp"
#include "natext/words.hpp"

namespace natext {

/// Finite partial configuration: values[i] sits at domain[i].
struct Pattern {
  std::vector<Word> domain;
  std::vector<Symbol> values;

  std::size_t size() const noexcept { return domain.size(); }
  bool empty() const noexcept { return domain.empty(); }

  std::optional<Symbol> at(Word const& w) const {
    for (std::size_t i = 0; i < domain.size(); ++i)
      if (domain[i] == w) return values[i];
    return std::nullopt;
  }

  friend bool operator==(Pattern const&, Pattern const&) = default;
};

struct ForbiddenPatterns {
  std::vector<Pattern> patterns;
};

/// rules[s](q, q') : a cell holding q may hold q' at its s-translate.
struct NearestNeighbor {
  std::vector<Relation> rules;
};

/// X = { t -> phi(t) g : g in F }.  Alphabet symbols are the elements of F.
struct CosetRule {
  std::shared_ptr<FiniteGroup const> group;
  std::vector<FiniteGroup::Index> phi;  // one image per semigroup generator

  FiniteGroup::Index image(Word const& t) const {
    FiniteGroup::Index r = group->identity();
    for (auto l : t) r = group->mul(r, phi.at(l));
    return r;
  }
};

enum class SpecKind { Forbidden, NearestNeighbor, Coset };

struct SubshiftSpec {
  SemigroupPresentation semigroup;
  std::vector<std::string> alphabet;
  std::variant<ForbiddenPatterns, NearestNeighbor, CosetRule> rule;

  SpecKind kind() const { return static_cast<SpecKind>(rule.index()); }
  std::size_t alphabet_size() const noexcept { return alphabet.size(); }
  template <typename T>
  T const& as() const {
    return std::get<T>(rule);
  }
};

inline char const* to_string(SpecKind k) {
  switch (k) {
    case SpecKind::Forbidden: return "forbidden";
    case SpecKind::NearestNeighbor: return "nearest_neighbor";
    case SpecKind::Coset: return "coset";
  }
  return "?";
}

inline Word normalize(SubshiftSpec const& spec, Word const& w) {
  return normal_form(spec.semigroup, w);
}

/// Sorted, duplicate-free normal forms.
inline std::vector<Word> canonical_window(SemigroupPresentation const& p, std::vector<Word> w) {
  for (auto& x : w) {
    p.check_word(x);
    x = normal_form(p, std::move(x));
  }
  std::sort(w.begin(), w.end(), length_lex_less);
  w.erase(std::unique(w.begin(), w.end()), w.end());
  return w;
}

/// Normalizes the domain, sorts it, and merges repeated cells.  Throws
/// InvalidArgument when a cell carries two different values.
inline Pattern canonical_pattern(SemigroupPresentation const& p, Pattern const& in) {
  if (in.domain.size() != in.values.size()) throw InvalidArgument("pattern arity mismatch");
  std::map<Word, Symbol, decltype(&length_lex_less)> cells(&length_lex_less);
  for (std::size_t i = 0; i < in.domain.size(); ++i) {
    p.check_word(in.domain[i]);
    Word w = normal_form(p, in.domain[i]);
    auto [it, fresh] = cells.emplace(w, in.values[i]);
    if (!fresh && it->second != in.values[i])
      throw InvalidArgument("pattern assigns two values to one cell");
  }
  Pattern out;
  for (auto const& [w, v] : cells) {
    out.domain.push_back(w);
    out.values.push_back(v);
  }
  return out;
}

/// Structural checks.  CosetRule: phi must respect every relation of S
/// (exact, since F is finite); otherwise MorphismInconsistent.
inline void validate(SubshiftSpec const& spec) {
  auto const k = spec.alphabet_size();
  if (k == 0 || k > kMaxAlphabet) throw InvalidArgument("alphabet size must be in 1..64");
  auto const rank = spec.semigroup.rank();
  std::visit(
      [&](auto const& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, ForbiddenPatterns>) {
          for (auto const& p : r.patterns) {
            if (p.empty()) throw InvalidArgument("forbidden pattern with empty domain");
            if (p.domain.size() != p.values.size()) throw InvalidArgument("pattern arity mismatch");
            for (auto const& w : p.domain) spec.semigroup.check_word(w);
            for (auto v : p.values)
              if (v >= k) throw InvalidArgument("pattern symbol outside alphabet");
          }
        } else if constexpr (std::is_same_v<T, NearestNeighbor>) {
          if (r.rules.size() != rank) throw InvalidArgument("need one relation per generator");
          for (auto const& m : r.rules)
            if (m.size() != k) throw InvalidArgument("relation size differs from alphabet");
        } else {
          if (!r.group) throw InvalidArgument("coset rule without group");
          if (r.phi.size() != rank) throw InvalidArgument("need one image per generator");
          if (r.group->order() != k) throw InvalidArgument("coset alphabet must be the group");
          for (auto x : r.phi)
            if (x >= r.group->order()) throw InvalidArgument("image outside group");
          for (auto const& [u, v] : spec.semigroup.relations())
            if (r.image(u) != r.image(v))
              throw MorphismInconsistent("phi violates " +
                                         format_word(spec.semigroup.generators(), u) + " = " +
                                         format_word(spec.semigroup.generators(), v));
        }
      },
      spec.rule);
}

namespace detail {
inline Relation coset_step(CosetRule const& c, FiniteGroup::Index m) {
  // pairs (g, m g)
  Relation r(c.group->order());
  for (FiniteGroup::Index g = 0; g < c.group->order(); ++g) r.set(g, c.group->mul(m, g));
  return r;
}
}  // namespace detail

/// Local-admissibility constraints of `spec` on the cells of a canonical
/// window (see canonical_window).  Solutions are exactly the locally
/// admissible patterns on the window.
inline Csp window_csp(SubshiftSpec const& spec, std::vector<Word> const& window) {
  Csp csp(window.size(), spec.alphabet_size());
  std::map<Word, std::size_t> index;
  for (std::size_t i = 0; i < window.size(); ++i) index.emplace(window[i], i);
  auto locate = [&](Word const& w) -> std::optional<std::size_t> {
    auto it = index.find(normalize(spec, w));
    if (it == index.end()) return std::nullopt;
    return it->second;
  };

  std::visit(
      [&](auto const& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, ForbiddenPatterns>) {
          for (auto const& pat : r.patterns) {
            Word const t0 = normalize(spec, pat.domain.front());
            for (auto const& w : window) {
              auto s = left_quotient(spec.semigroup, t0, w);
              if (!s) continue;
              std::vector<std::size_t> cells;
              for (auto const& t : pat.domain) {
                auto c = locate(t * *s);
                if (!c) break;
                cells.push_back(*c);
              }
              if (cells.size() == pat.domain.size()) csp.add_nogood(cells, pat.values);
            }
          }
        } else if constexpr (std::is_same_v<T, NearestNeighbor>) {
          for (std::size_t i = 0; i < window.size(); ++i)
            for (Letter s = 0; s < r.rules.size(); ++s)
              if (auto j = locate(Word{s} * window[i])) csp.add_binary(i, *j, r.rules[s]);
        } else {
          if (window.empty()) return;
          auto const& g = *r.group;
          auto const m0 = g.inv(r.image(window.front()));
          for (std::size_t i = 1; i < window.size(); ++i)
            csp.add_binary(0, i, detail::coset_step(r, g.mul(r.image(window[i]), m0)));
        }
      },
      spec.rule);
  return csp;
}

/// True iff no forbidden occurrence (disallowed pair, coset violation) lies
/// inside p.domain.
inline bool locally_admissible(SubshiftSpec const& spec, Pattern const& p) {
  if (p.empty()) return true;
  for (auto v : p.values)
    if (v >= spec.alphabet_size()) return false;
  Pattern c = canonical_pattern(spec.semigroup, p);
  return window_csp(spec, c.domain).check(c.values);
}

// --- counting ---

enum class CountMethod { Enumeration, TransferMatrix };

inline char const* to_string(CountMethod m) {
  return m == CountMethod::Enumeration ? "enumeration" : "transfer-matrix";
}

struct WindowCount {
  std::vector<Word> window;
  BigInt count;
  CountMethod method = CountMethod::Enumeration;
};

/// Transfer matrix of a one-generator spec on N.  States are the locally
/// admissible blocks of length `block` (block = span - 1 of the longest
/// forbidden pattern, at least 1); state u -> v iff u, v overlap in block-1
/// cells and the glued word is admissible.
struct TransferMatrix {
  std::size_t block = 1;
  std::vector<std::vector<Symbol>> states;
  Matrix<BigInt> matrix;
};

/// The words 1, a, ..., a^{n-1} of a one-generator semigroup.
inline std::vector<Word> interval(std::size_t n) {
  std::vector<Word> w;
  for (std::size_t i = 0; i < n; ++i) w.push_back(Word(std::vector<Letter>(i, 0)));
  return w;
}

namespace detail {
inline bool is_single_generator(SemigroupPresentation const& p) {
  return p.rank() == 1 && p.is_free();
}

inline std::vector<std::vector<Symbol>> admissible_blocks(SubshiftSpec const& spec,
                                                          std::size_t len) {
  std::vector<std::vector<Symbol>> out;
  window_csp(spec, interval(len)).enumerate([&](Csp::Assignment const& x) {
    out.push_back(x);
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

template <typename T>
Matrix<T> matrix_power(Matrix<T> a, std::size_t e) {
  Matrix<T> r = Matrix<T>::identity(a.rows());
  while (e) {
    if (e & 1) r = r * a;
    e >>= 1;
    if (e) a = a * a;
  }
  return r;
}

inline BigInt total(Matrix<BigInt> const& m) {
  BigInt s = 0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j);
  return s;
}
}  // namespace detail

inline TransferMatrix transfer_matrix(SubshiftSpec const& spec) {
  if (!detail::is_single_generator(spec.semigroup))
    throw NotSingleGenerator("transfer matrix needs a free one-generator semigroup");
  std::size_t span = 2;
  if (spec.kind() == SpecKind::Forbidden)
    for (auto const& p : spec.as<ForbiddenPatterns>().patterns)
      for (auto const& w : p.domain) span = std::max(span, w.size() + 1);
  TransferMatrix tm;
  tm.block = span - 1;
  tm.states = detail::admissible_blocks(spec, tm.block);
  auto glued = detail::admissible_blocks(spec, span);
  std::map<std::vector<Symbol>, std::size_t> id;
  for (std::size_t i = 0; i < tm.states.size(); ++i) id.emplace(tm.states[i], i);
  tm.matrix = Matrix<BigInt>(tm.states.size(), tm.states.size());
  for (auto const& g : glued) {
    std::vector<Symbol> u(g.begin(), g.end() - 1), v(g.begin() + 1, g.end());
    tm.matrix(id.at(u), id.at(v)) = 1;
  }
  return tm;
}

/// Number of locally admissible words of length n >= tm.block.
inline BigInt transfer_count(TransferMatrix const& tm, std::size_t n) {
  if (n < tm.block) throw InvalidArgument("window shorter than the transfer block");
  if (tm.states.empty()) return 0;
  return detail::total(detail::matrix_power(tm.matrix, n - tm.block));
}

/// Exact number of locally admissible patterns on `window`.  Intervals
/// {1, a, ..., a^{n-1}} of a one-generator free semigroup use the transfer
/// matrix; everything else is counted by search.
inline WindowCount window_count(SubshiftSpec const& spec, std::vector<Word> window) {
  if (window.empty()) throw InvalidArgument("window must be non-empty");
  WindowCount wc;
  wc.window = canonical_window(spec.semigroup, std::move(window));
  if (detail::is_single_generator(spec.semigroup) && wc.window == interval(wc.window.size())) {
    auto tm = transfer_matrix(spec);
    if (wc.window.size() >= tm.block) {
      wc.count = transfer_count(tm, wc.window.size());
      wc.method = CountMethod::TransferMatrix;
      return wc;
    }
  }
  wc.count = window_csp(spec, wc.window).count();
  return wc;
}

/// Every locally admissible pattern on a window, in lexicographic order of
/// the value vectors (window canonicalized first).
inline std::vector<Pattern> admissible_patterns(SubshiftSpec const& spec, std::vector<Word> window) {
  auto w = canonical_window(spec.semigroup, std::move(window));
  std::vector<Pattern> out;
  window_csp(spec, w).enumerate([&](Csp::Assignment const& x) {
    out.push_back(Pattern{w, x});
    return true;
  });
  std::sort(out.begin(), out.end(), [](Pattern const& a, Pattern const& b) { return a.values < b.values; });
  return out;
}

// --- finite subshifts ---

/// A finite S-set given by one self-map per generator on {0..size-1}.
struct FiniteAction {
  std::size_t size = 0;
  std::vector<std::vector<std::size_t>> maps;
};

struct CosetSubshift {
  SubshiftSpec spec;
  /// Configuration i is t -> phi(t) g_i, identified by its value g_i at 1_S.
  std::vector<FiniteGroup::Index> configurations;
  /// The phi images generate F.
  bool generates = true;

  Symbol value(std::size_t config, Word const& t) const {
    auto const& c = spec.as<CosetRule>();
    return c.group->mul(c.image(t), configurations.at(config));
  }

  /// s.x_g = x_{phi(s) g}: the induced permutation of configurations.
  FiniteAction action() const {
    auto const& c = spec.as<CosetRule>();
    FiniteAction a;
    a.size = configurations.size();
    std::vector<std::size_t> pos(c.group->order());
    for (std::size_t i = 0; i < configurations.size(); ++i) pos[configurations[i]] = i;
    for (auto m : c.phi) {
      std::vector<std::size_t> f(a.size);
      for (std::size_t i = 0; i < a.size; ++i) f[i] = pos[c.group->mul(m, configurations[i])];
      a.maps.push_back(std::move(f));
    }
    return a;
  }
};

inline CosetSubshift coset_subshift(SemigroupPresentation s, std::shared_ptr<FiniteGroup const> f,
                                    std::vector<FiniteGroup::Index> phi) {
  CosetSubshift out;
  out.spec.semigroup = std::move(s);
  out.spec.alphabet = f->labels();
  out.generates = f->generated_subgroup(phi).size() == f->order();
  out.spec.rule = CosetRule{std::move(f), std::move(phi)};
  validate(out.spec);
  auto const& c = out.spec.as<CosetRule>();
  for (FiniteGroup::Index g = 0; g < c.group->order(); ++g) out.configurations.push_back(g);
  return out;
}

/// Every generator map is a bijection.
inline bool check_surjective_finite(FiniteAction const& a) {
  for (auto const& f : a.maps) {
    std::vector<bool> hit(a.size, false);
    for (auto y : f) hit.at(y) = true;
    if (std::find(hit.begin(), hit.end(), false) != hit.end()) return false;
  }
  return true;
}

/// Forward orbit S.x (x included).
inline std::vector<bool> finite_orbit(FiniteAction const& a, std::size_t x) {
  std::vector<bool> in(a.size, false);
  std::vector<std::size_t> stack{x};
  in.at(x) = true;
  while (!stack.empty()) {
    auto y = stack.back();
    stack.pop_back();
    for (auto const& f : a.maps)
      if (!in[f[y]]) {
        in[f[y]] = true;
        stack.push_back(f[y]);
      }
  }
  return in;
}

inline bool check_transitive_finite(FiniteAction const& a) {
  for (std::size_t x = 0; x < a.size; ++x) {
    auto o = finite_orbit(a, x);
    if (std::find(o.begin(), o.end(), false) == o.end()) return true;
  }
  return a.size == 0;
}

inline bool check_minimal_finite(FiniteAction const& a) {
  for (std::size_t x = 0; x < a.size; ++x) {
    auto o = finite_orbit(a, x);
    if (std::find(o.begin(), o.end(), false) != o.end()) return false;
  }
  return true;
}

/// Irreducibility of a non-negative square matrix: its support digraph is
/// strongly connected, paths of length >= 1 required.
inline bool irreducible(Matrix<BigInt> const& m) {
  std::size_t const n = m.rows();
  if (n == 0) return false;
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{s};
    while (!stack.empty()) {
      auto u = stack.back();
      stack.pop_back();
      for (std::size_t v = 0; v < n; ++v)
        if (m(u, v) != 0 && !seen[v]) {
          seen[v] = true;
          stack.push_back(v);
        }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) return false;
  }
  return true;
}

/// Topological transitivity of a one-generator SFT via its transfer matrix.
inline bool check_transitive_matrix(SubshiftSpec const& spec) {
  return irreducible(transfer_matrix(spec).matrix);
}

// --- metric ---

struct Distance {
  Dyadic value;             // 2^{-m}
  std::size_t index = 0;    // m
  bool upper_bound = false; // no disagreement inside the supplied windows
};

/// d(x, y) = 2^{-m} with m the first index whose window shows a disagreement.
/// When every window agrees only the bound 2^{-|windows|} is known.
inline Distance config_distance(SemigroupPresentation const& s, Pattern const& x, Pattern const& y,
                                std::vector<std::vector<Word>> const& exhaustion) {
  auto cx = canonical_pattern(s, x);
  auto cy = canonical_pattern(s, y);
  for (std::size_t m = 0; m < exhaustion.size(); ++m)
    for (auto const& w : exhaustion[m]) {
      Word t = normal_form(s, w);
      auto a = cx.at(t), b = cy.at(t);
      if (!a || !b) throw InvalidArgument("configuration undefined on an exhaustion window");
      if (*a != *b) return {Dyadic(1, -static_cast<std::int64_t>(m)), m, false};
    }
  auto m = exhaustion.size();
  return {Dyadic(1, -static_cast<std::int64_t>(m)), m, true};
}

// --- built-in specs ---

/// Full shift on k symbols.
inline SubshiftSpec full_shift(SemigroupPresentation s, std::size_t k) {
  SubshiftSpec spec;
  spec.semigroup = std::move(s);
  for (std::size_t i = 0; i < k; ++i) spec.alphabet.push_back(std::to_string(i));
  spec.rule = ForbiddenPatterns{};
  return spec;
}

/// Golden mean shift on N: forbid 11 on {1, a}.
inline SubshiftSpec golden_mean(SemigroupPresentation s = SemigroupPresentation::free({"a"})) {
  SubshiftSpec spec = full_shift(std::move(s), 2);
  ForbiddenPatterns fp;
  fp.patterns.push_back(Pattern{{Word{}, Word{0}}, {1, 1}});
  spec.rule = fp;
  return spec;
}

/// The Z/3 subshift on F_2^+ with x(a t) = x(t) + 1 and x(b t) = x(t) - 1.
inline SubshiftSpec fig1_spec() {
  SubshiftSpec spec;
  spec.semigroup = SemigroupPresentation::free({"a", "b"});
  spec.alphabet = {"0", "1", "2"};
  Relation ra(3), rb(3);
  for (Symbol q = 0; q < 3; ++q) {
    ra.set(q, (q + 1) % 3);
    rb.set(q, (q + 2) % 3);
  }
  spec.rule = NearestNeighbor{{ra, rb}};
  return spec;
}

}  // namespace natext
