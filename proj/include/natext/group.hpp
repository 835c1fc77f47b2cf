#pragma once

// Group elements in canonical form for the built-in receiving groups, the
// S-group pair (G, eta), the free S-group of a presentation, and the
// Grothendieck group of a commutative presentation.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <variant>
#include <vector>

#include "natext/affine.hpp"
#include "natext/britton.hpp"
#include "natext/error.hpp"
#include "natext/finite_group.hpp"
#include "natext/snf.hpp"
#include "natext/words.hpp"

namespace natext {

/// Element of Z^d.
struct IntVector {
  std::vector<std::int64_t> coords;
  friend auto operator<=>(IntVector const&, IntVector const&) = default;
  friend bool operator==(IntVector const&, IntVector const&) = default;
};

/// Reduced word in the free group of the given rank.
struct FreeElem {
  std::uint32_t rank = 0;
  SignedWord word;
  friend auto operator<=>(FreeElem const&, FreeElem const&) = default;
  friend bool operator==(FreeElem const&, FreeElem const&) = default;
};

struct FiniteElem {
  std::shared_ptr<FiniteGroup const> group;
  FiniteGroup::Index index = 0;

  friend bool operator==(FiniteElem const& a, FiniteElem const& b) {
    return a.index == b.index && (a.group == b.group || *a.group == *b.group);
  }
  friend std::strong_ordering operator<=>(FiniteElem const& a, FiniteElem const& b) {
    if (!(a.group == b.group || *a.group == *b.group))
      return std::less<>{}(a.group.get(), b.group.get()) ? std::strong_ordering::less
                                                          : std::strong_ordering::greater;
    return a.index <=> b.index;
  }
};

/// A group given only by generators and relators.  Equality is decided by a
/// bounded search and may come back Unknown.
struct GenericGroup {
  GeneratorSet generators;
  std::vector<SignedWord> relators;  // freely reduced
  std::size_t budget = 20000;
  std::size_t slack = 4;
};

/// Reduced word over a GenericGroup.  Ordering and == compare the words, not
/// the group elements; use `equal` for group equality.
struct GenericElem {
  std::shared_ptr<GenericGroup const> group;
  SignedWord word;

  friend bool operator==(GenericElem const& a, GenericElem const& b) {
    return a.group == b.group && a.word == b.word;
  }
  friend std::strong_ordering operator<=>(GenericElem const& a, GenericElem const& b) {
    if (a.group != b.group)
      return std::less<>{}(a.group.get(), b.group.get()) ? std::strong_ordering::less
                                                          : std::strong_ordering::greater;
    return a.word <=> b.word;
  }
};

enum class FamilyKind { Abelian, Free, Dyadic, Britton, Finite, Generic };

class GroupElem {
 public:
  using Payload =
      std::variant<IntVector, FreeElem, DyadicAffine, BrittonForm, FiniteElem, GenericElem>;

  GroupElem() = default;
  GroupElem(IntVector v) : p_(std::move(v)) {}
  GroupElem(FreeElem v) : p_(std::move(v)) {}
  GroupElem(DyadicAffine v) : p_(std::move(v)) {}
  GroupElem(BrittonForm v) : p_(std::move(v)) {}
  GroupElem(FiniteElem v) : p_(std::move(v)) {}
  GroupElem(GenericElem v) : p_(std::move(v)) {}

  FamilyKind kind() const noexcept { return static_cast<FamilyKind>(p_.index()); }
  Payload const& payload() const noexcept { return p_; }

  template <typename T>
  T const& as() const {
    if (auto const* x = std::get_if<T>(&p_)) return *x;
    throw FamilyMismatch("group element has a different family");
  }

  friend bool operator==(GroupElem const&, GroupElem const&) = default;
  friend std::strong_ordering operator<=>(GroupElem const& a, GroupElem const& b) {
    if (a.p_.index() != b.p_.index()) return a.p_.index() <=> b.p_.index();
    return std::visit(
        [&](auto const& x) -> std::strong_ordering {
          using T = std::decay_t<decltype(x)>;
          auto const& y = std::get<T>(b.p_);
          if constexpr (std::is_same_v<T, FreeElem> || std::is_same_v<T, IntVector>) {
            auto o = x <=> y;
            return o < 0 ? std::strong_ordering::less
                         : (o > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
          } else {
            return x <=> y;
          }
        },
        a.p_);
  }

 private:
  Payload p_;
};

// --- family-level checks and arithmetic ---

/// True iff the two elements can be multiplied together.
inline bool same_family(GroupElem const& g, GroupElem const& h) {
  if (g.kind() != h.kind()) return false;
  switch (g.kind()) {
    case FamilyKind::Abelian:
      return g.as<IntVector>().coords.size() == h.as<IntVector>().coords.size();
    case FamilyKind::Free: return g.as<FreeElem>().rank == h.as<FreeElem>().rank;
    case FamilyKind::Dyadic: return true;
    case FamilyKind::Britton:
      return g.as<BrittonForm>().m() == h.as<BrittonForm>().m() &&
             g.as<BrittonForm>().n() == h.as<BrittonForm>().n();
    case FamilyKind::Finite: {
      auto const& a = g.as<FiniteElem>().group;
      auto const& b = h.as<FiniteElem>().group;
      return a == b || *a == *b;
    }
    case FamilyKind::Generic: return g.as<GenericElem>().group == h.as<GenericElem>().group;
  }
  return false;
}

inline void require_same_family(GroupElem const& g, GroupElem const& h) {
  if (!same_family(g, h)) throw FamilyMismatch("operands belong to different groups");
}

inline GroupElem mul(GroupElem const& g, GroupElem const& h) {
  require_same_family(g, h);
  switch (g.kind()) {
    case FamilyKind::Abelian: {
      IntVector r = g.as<IntVector>();
      auto const& b = h.as<IntVector>().coords;
      for (std::size_t i = 0; i < b.size(); ++i) r.coords[i] += b[i];
      return r;
    }
    case FamilyKind::Free: {
      auto const& a = g.as<FreeElem>();
      return FreeElem{a.rank, free_reduce(a.word * h.as<FreeElem>().word)};
    }
    case FamilyKind::Dyadic: return g.as<DyadicAffine>() * h.as<DyadicAffine>();
    case FamilyKind::Britton: return g.as<BrittonForm>() * h.as<BrittonForm>();
    case FamilyKind::Finite: {
      auto const& a = g.as<FiniteElem>();
      return FiniteElem{a.group, a.group->mul(a.index, h.as<FiniteElem>().index)};
    }
    case FamilyKind::Generic: {
      auto const& a = g.as<GenericElem>();
      return GenericElem{a.group, free_reduce(a.word * h.as<GenericElem>().word)};
    }
  }
  throw FamilyMismatch("unknown family");
}

inline GroupElem inv(GroupElem const& g) {
  switch (g.kind()) {
    case FamilyKind::Abelian: {
      IntVector r = g.as<IntVector>();
      for (auto& x : r.coords) x = -x;
      return r;
    }
    case FamilyKind::Free: {
      auto const& a = g.as<FreeElem>();
      return FreeElem{a.rank, a.word.inverse()};
    }
    case FamilyKind::Dyadic: return g.as<DyadicAffine>().inverse();
    case FamilyKind::Britton: return g.as<BrittonForm>().inverse();
    case FamilyKind::Finite: {
      auto const& a = g.as<FiniteElem>();
      return FiniteElem{a.group, a.group->inv(a.index)};
    }
    case FamilyKind::Generic: {
      auto const& a = g.as<GenericElem>();
      return GenericElem{a.group, a.word.inverse()};
    }
  }
  throw FamilyMismatch("unknown family");
}

/// Group power g^e (e may be negative).
inline GroupElem power(GroupElem const& g, GroupElem const& identity, std::int64_t e) {
  GroupElem base = e < 0 ? inv(g) : g;
  GroupElem r = identity;
  for (std::int64_t i = 0; i < (e < 0 ? -e : e); ++i) r = mul(r, base);
  return r;
}

namespace detail {

// Bounded search for a derivation of w = 1 in a generic group: replace a piece
// P of a cyclic conjugate P Q of a relator (or its inverse) by Q^-1, then
// reduce freely.
inline TriState generic_is_identity(GenericGroup const& gg, SignedWord const& w0) {
  SignedWord w = free_reduce(w0);
  if (w.empty()) return TriState::Equal;
  // exponent-sum separation through the abelianization
  std::size_t const rank = gg.generators.size();
  Matrix<BigInt> lat(gg.relators.size(), rank);
  for (std::size_t r = 0; r < gg.relators.size(); ++r) {
    auto v = exponent_sums(gg.relators[r], rank);
    for (std::size_t j = 0; j < rank; ++j) lat(r, j) = v[j];
  }
  if (!in_row_lattice(lat, exponent_sums(w, rank))) return TriState::NotEqualProven;
  if (gg.relators.empty()) return TriState::NotEqualProven;  // free group, w reduced

  std::vector<SignedWord> cyclic;
  for (auto const& r : gg.relators) {
    for (auto const& base : {r, r.inverse()}) {
      for (std::size_t s = 0; s < base.size(); ++s) {
        SignedWord rot;
        for (std::size_t i = 0; i < base.size(); ++i)
          rot.letters.push_back(base.letters[(s + i) % base.size()]);
        cyclic.push_back(std::move(rot));
      }
    }
  }
  std::sort(cyclic.begin(), cyclic.end());
  cyclic.erase(std::unique(cyclic.begin(), cyclic.end()), cyclic.end());

  std::size_t const max_len = w.size() + gg.slack;
  std::set<SignedWord> seen{w};
  std::deque<SignedWord> queue{w};
  std::size_t expanded = 0;
  while (!queue.empty()) {
    if (expanded++ >= gg.budget) return TriState::Unknown;
    SignedWord cur = std::move(queue.front());
    queue.pop_front();
    for (auto const& rel : cyclic) {
      for (std::size_t plen = 1; plen <= rel.size(); ++plen) {
        SignedWord piece(std::vector<SignedLetter>(rel.letters.begin(),
                                                   rel.letters.begin() + static_cast<std::ptrdiff_t>(plen)));
        SignedWord rest(std::vector<SignedLetter>(rel.letters.begin() + static_cast<std::ptrdiff_t>(plen),
                                                  rel.letters.end()));
        SignedWord repl = rest.inverse();
        if (piece.size() > cur.size()) break;
        for (std::size_t i = 0; i + piece.size() <= cur.size(); ++i) {
          if (!std::equal(piece.begin(), piece.end(),
                          cur.letters.begin() + static_cast<std::ptrdiff_t>(i)))
            continue;
          SignedWord next;
          next.letters.insert(next.letters.end(), cur.letters.begin(),
                              cur.letters.begin() + static_cast<std::ptrdiff_t>(i));
          next.letters.insert(next.letters.end(), repl.begin(), repl.end());
          next.letters.insert(next.letters.end(),
                              cur.letters.begin() + static_cast<std::ptrdiff_t>(i + piece.size()),
                              cur.letters.end());
          next = free_reduce(next);
          if (next.empty()) return TriState::Equal;
          if (next.size() > max_len) continue;
          if (seen.insert(next).second) queue.push_back(std::move(next));
        }
      }
    }
  }
  return TriState::Unknown;
}

}  // namespace detail

/// Tri-state group equality.  Exact for every family except Generic.
inline TriState equal(GroupElem const& g, GroupElem const& h) {
  require_same_family(g, h);
  if (g.kind() != FamilyKind::Generic)
    return g == h ? TriState::Equal : TriState::NotEqualProven;
  auto const& a = g.as<GenericElem>();
  if (a.word == h.as<GenericElem>().word) return TriState::Equal;
  return detail::generic_is_identity(*a.group, a.word * h.as<GenericElem>().word.inverse());
}

inline bool is_identity(GroupElem const& g) {
  switch (g.kind()) {
    case FamilyKind::Abelian: {
      auto const& c = g.as<IntVector>().coords;
      return std::all_of(c.begin(), c.end(), [](auto x) { return x == 0; });
    }
    case FamilyKind::Free: return g.as<FreeElem>().word.empty();
    case FamilyKind::Dyadic: return g.as<DyadicAffine>().is_identity();
    case FamilyKind::Britton: return g.as<BrittonForm>().is_identity();
    case FamilyKind::Finite: {
      auto const& a = g.as<FiniteElem>();
      return a.index == a.group->identity();
    }
    case FamilyKind::Generic:
      return detail::generic_is_identity(*g.as<GenericElem>().group,
                                         g.as<GenericElem>().word) == TriState::Equal;
  }
  return false;
}

// --- group families ---

/// Descriptor of a built-in group family, selected by name in the CLI:
/// `Z^d`, `F_n`, `BS(m,n)`, `finite:<file>`, `generic`.
struct GroupFamily {
  FamilyKind kind = FamilyKind::Free;
  std::uint32_t rank = 0;  // d for Z^d, n for F_n
  std::int64_t m = 1, n = 2;
  std::shared_ptr<FiniteGroup const> finite;
  std::shared_ptr<GenericGroup const> generic;

  static GroupFamily make(FamilyKind k, std::uint32_t rank, std::int64_t m = 1, std::int64_t n = 2) {
    GroupFamily g;
    g.kind = k;
    g.rank = rank;
    g.m = m;
    g.n = n;
    return g;
  }
  static GroupFamily abelian(std::uint32_t d) { return make(FamilyKind::Abelian, d); }
  static GroupFamily free(std::uint32_t n) { return make(FamilyKind::Free, n); }
  /// BS(1,2) in the faithful dyadic model.
  static GroupFamily dyadic() { return make(FamilyKind::Dyadic, 2, 1, 2); }
  static GroupFamily baumslag_solitar(std::int64_t m, std::int64_t n) {
    return make(FamilyKind::Britton, 2, m, n);
  }
  static GroupFamily finite_group(std::shared_ptr<FiniteGroup const> f) {
    GroupFamily g = make(FamilyKind::Finite, 0);
    g.finite = std::move(f);
    return g;
  }
  static GroupFamily generic_group(std::shared_ptr<GenericGroup const> gg) {
    GroupFamily g = make(FamilyKind::Generic, 0);
    g.rank = static_cast<std::uint32_t>(gg->generators.size());
    g.generic = std::move(gg);
    return g;
  }

  std::string name() const {
    switch (kind) {
      case FamilyKind::Abelian: return "Z^" + std::to_string(rank);
      case FamilyKind::Free: return "F_" + std::to_string(rank);
      case FamilyKind::Dyadic: return "BS(1,2)";
      case FamilyKind::Britton: return "BS(" + std::to_string(m) + "," + std::to_string(n) + ")";
      case FamilyKind::Finite: return "finite(order " + std::to_string(finite->order()) + ")";
      case FamilyKind::Generic: return "generic";
    }
    return "?";
  }

  /// True when equality of elements is decided exactly by canonical forms.
  bool canonical() const noexcept { return kind != FamilyKind::Generic; }

  GroupElem identity() const {
    switch (kind) {
      case FamilyKind::Abelian: return IntVector{std::vector<std::int64_t>(rank, 0)};
      case FamilyKind::Free: return FreeElem{rank, {}};
      case FamilyKind::Dyadic: return DyadicAffine::identity();
      case FamilyKind::Britton: return BrittonForm(m, n);
      case FamilyKind::Finite: return FiniteElem{finite, finite->identity()};
      case FamilyKind::Generic: return GenericElem{generic, {}};
    }
    throw FamilyMismatch("unknown family");
  }

  /// Standard generators: unit vectors, free generators, (a, b) for BS(m,n)
  /// with a the stable letter (a = x -> 2x and b = x -> x+1 in the dyadic
  /// model), the presentation letters for Generic.
  std::vector<GroupElem> standard_generators() const {
    std::vector<GroupElem> out;
    switch (kind) {
      case FamilyKind::Abelian:
        for (std::uint32_t i = 0; i < rank; ++i) {
          IntVector v{std::vector<std::int64_t>(rank, 0)};
          v.coords[i] = 1;
          out.emplace_back(v);
        }
        break;
      case FamilyKind::Free:
        for (std::uint32_t i = 0; i < rank; ++i) out.emplace_back(FreeElem{rank, {{i, 1}}});
        break;
      case FamilyKind::Dyadic:
        out.emplace_back(DyadicAffine{1, 0});
        out.emplace_back(DyadicAffine{0, 1});
        break;
      case FamilyKind::Britton:
        out.emplace_back(BrittonForm::from_word(m, n, {{BrittonForm::kStable, 1}}));
        out.emplace_back(BrittonForm::from_word(m, n, {{BrittonForm::kBase, 1}}));
        break;
      case FamilyKind::Finite:
        throw InvalidArgument("finite groups have no standard generating set");
      case FamilyKind::Generic:
        for (std::uint32_t i = 0; i < rank; ++i) out.emplace_back(GenericElem{generic, {{i, 1}}});
        break;
    }
    return out;
  }

  /// Evaluates a word over the standard generators.
  GroupElem evaluate(SignedWord const& w) const {
    if (kind == FamilyKind::Britton) return BrittonForm::from_word(m, n, w);
    if (kind == FamilyKind::Free) return FreeElem{rank, free_reduce(w)};
    if (kind == FamilyKind::Generic) return GenericElem{generic, free_reduce(w)};
    auto gens = standard_generators();
    GroupElem r = identity();
    for (auto l : w) r = mul(r, l.sign > 0 ? gens.at(l.gen) : inv(gens.at(l.gen)));
    return r;
  }
};

/// A word over the standard generators of g's family representing g.
inline SignedWord standard_word(GroupElem const& g) {
  switch (g.kind()) {
    case FamilyKind::Abelian: {
      SignedWord w;
      auto const& c = g.as<IntVector>().coords;
      for (Letter i = 0; i < c.size(); ++i)
        for (std::int64_t k = 0; k < (c[i] < 0 ? -c[i] : c[i]); ++k)
          w.letters.push_back({i, static_cast<std::int8_t>(c[i] < 0 ? -1 : 1)});
      return w;
    }
    case FamilyKind::Free: return g.as<FreeElem>().word;
    case FamilyKind::Dyadic: {
      // x -> 2^k x + p/2^q  ==  a^-q b^p a^q a^k
      auto const& f = g.as<DyadicAffine>();
      std::int64_t q = f.c.exponent() < 0 ? -f.c.exponent() : 0;
      BigInt p = q > 0 ? f.c.numerator() : f.c.to_integer();
      SignedWord w;
      for (std::int64_t i = 0; i < q; ++i) w.letters.push_back({0, -1});
      std::int8_t s = p < 0 ? -1 : 1;
      for (BigInt i = 0; i < (p < 0 ? BigInt(-p) : p); ++i) w.letters.push_back({1, s});
      for (std::int64_t i = 0; i < q; ++i) w.letters.push_back({0, 1});
      for (std::int64_t i = 0; i < (f.k < 0 ? -f.k : f.k); ++i)
        w.letters.push_back({0, static_cast<std::int8_t>(f.k < 0 ? -1 : 1)});
      return free_reduce(w);
    }
    case FamilyKind::Britton: return g.as<BrittonForm>().to_word();
    case FamilyKind::Finite:
      throw InvalidArgument("finite group elements have no standard word");
    case FamilyKind::Generic: return g.as<GenericElem>().word;
  }
  throw FamilyMismatch("unknown family");
}

inline std::string to_string(GroupElem const& g) {
  switch (g.kind()) {
    case FamilyKind::Abelian: {
      std::string s = "(";
      auto const& c = g.as<IntVector>().coords;
      for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
      return s + ")";
    }
    case FamilyKind::Free: {
      auto const& w = g.as<FreeElem>().word;
      if (w.empty()) return "1";
      std::string s;
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ' ';
        s += "x" + std::to_string(w.letters[i].gen);
        if (w.letters[i].sign < 0) s += "^-1";
      }
      return s;
    }
    case FamilyKind::Dyadic: return g.as<DyadicAffine>().to_string();
    case FamilyKind::Britton: return g.as<BrittonForm>().to_string();
    case FamilyKind::Finite: {
      auto const& f = g.as<FiniteElem>();
      return f.group->label(f.index);
    }
    case FamilyKind::Generic: {
      auto const& e = g.as<GenericElem>();
      return format_signed_word(e.group->generators, e.word);
    }
  }
  return "?";
}

/// Applies the homomorphism determined by `images` of the standard
/// generators of g's family.
inline GroupElem endomorphism_apply(std::vector<GroupElem> const& images, GroupElem const& g) {
  if (images.empty()) throw InvalidArgument("empty generator map");
  for (auto const& x : images) require_same_family(images.front(), x);
  auto w = standard_word(g);
  GroupElem r = mul(images.front(), inv(images.front()));
  for (auto l : w) {
    if (l.gen >= images.size()) throw InvalidArgument("generator map too short");
    r = mul(r, l.sign > 0 ? images[l.gen] : inv(images[l.gen]));
  }
  return r;
}

// --- S-groups ---

/// A receiving S-group (G, eta): eta sends each semigroup generator to G and
/// extends to a morphism on words.
struct SGroup {
  std::string label;
  SemigroupPresentation semigroup;
  GroupFamily group;
  std::vector<GroupElem> eta;
  /// Relators of G as words in the eta-images of the semigroup generators,
  /// forming a complete presentation of G; absent when unknown.
  std::optional<std::vector<SignedWord>> relators;
  /// eta known to be injective on S.
  bool eta_injective = false;

  GroupElem identity() const { return group.identity(); }
  std::size_t rank() const noexcept { return semigroup.rank(); }
};

inline GroupElem eta_apply(SGroup const& sg, Word const& w) {
  sg.semigroup.check_word(w);
  GroupElem r = sg.identity();
  for (auto l : w) r = mul(r, sg.eta[l]);
  return r;
}

inline GroupElem eta_apply(SGroup const& sg, SignedWord const& w) {
  GroupElem r = sg.identity();
  for (auto l : w) r = mul(r, l.sign > 0 ? sg.eta.at(l.gen) : inv(sg.eta.at(l.gen)));
  return r;
}

/// Checks eta against the semigroup relations; throws MorphismInconsistent
/// when a relation is provably violated.
inline void validate_sgroup(SGroup const& sg) {
  if (sg.eta.size() != sg.semigroup.rank())
    throw InvalidArgument("eta needs one image per semigroup generator");
  GroupElem id = sg.identity();
  for (auto const& x : sg.eta) require_same_family(id, x);
  for (auto const& [u, v] : sg.semigroup.relations())
    if (equal(eta_apply(sg, u), eta_apply(sg, v)) == TriState::NotEqualProven)
      throw MorphismInconsistent("eta violates relation " +
                                 format_word(sg.semigroup.generators(), u) + " = " +
                                 format_word(sg.semigroup.generators(), v));
}

/// Equality realization of S through eta.
inline Realization realization_of(SGroup const& sg) {
  auto copy = std::make_shared<SGroup const>(sg);
  return Realization{[copy](Word const& u, Word const& v) {
                       return equal(eta_apply(*copy, u), eta_apply(*copy, v)) == TriState::Equal;
                     },
                     sg.eta_injective && sg.group.canonical()};
}

inline std::vector<SignedWord> relators_of(SemigroupPresentation const& p) {
  std::vector<SignedWord> out;
  for (auto const& [u, v] : p.relations())
    out.push_back(free_reduce(SignedWord::from_word(u) * SignedWord::from_word(v).inverse()));
  return out;
}

/// F_n^+ inside F_n.
inline SGroup free_monoid_in_free_group(std::vector<std::string> names) {
  SGroup sg;
  sg.semigroup = SemigroupPresentation::free(std::move(names));
  auto n = static_cast<std::uint32_t>(sg.semigroup.rank());
  sg.group = GroupFamily::free(n);
  sg.eta = sg.group.standard_generators();
  sg.relators = std::vector<SignedWord>{};
  sg.eta_injective = true;
  sg.label = "F_" + std::to_string(n) + "+ in F_" + std::to_string(n);
  return sg;
}

/// N^d inside Z^d.
inline SGroup lattice_in_integers(std::vector<std::string> names) {
  SGroup sg;
  sg.semigroup = SemigroupPresentation::free_commutative(std::move(names));
  auto d = static_cast<std::uint32_t>(sg.semigroup.rank());
  sg.group = GroupFamily::abelian(d);
  sg.eta = sg.group.standard_generators();
  sg.relators = relators_of(sg.semigroup);
  sg.eta_injective = true;
  sg.label = "N^" + std::to_string(d) + " in Z^" + std::to_string(d);
  return sg;
}

/// F_2^+ = <a,b>+ inside BS(1,2) via a: x -> 2x, b: x -> 2x + 1.  In these
/// generators BS(1,2) = <a, b | b^-1 a b = a^-1 b a>.
inline SGroup free_monoid_in_bs12(std::vector<std::string> names = {"a", "b"}) {
  SGroup sg;
  sg.semigroup = SemigroupPresentation::free(std::move(names));
  if (sg.semigroup.rank() != 2) throw InvalidArgument("BS(1,2) embedding needs two generators");
  sg.group = GroupFamily::dyadic();
  sg.eta = {DyadicAffine{1, 0}, DyadicAffine{1, 1}};
  // b^-1 a b a^-1 b^-1 a
  sg.relators = std::vector<SignedWord>{SignedWord{{1, -1}, {0, 1}, {1, 1}, {0, -1}, {1, -1}, {0, 1}}};
  sg.eta_injective = true;
  sg.label = "F_2+ in BS(1,2)";
  return sg;
}

/// Positive presentation <a, b | a b^m = b^n a>+ of BS(m,n)+.
inline SemigroupPresentation bs_positive(std::int64_t m, std::int64_t n,
                                         std::vector<std::string> names = {"a", "b"}) {
  Word lhs{0};
  lhs.letters.insert(lhs.letters.end(), static_cast<std::size_t>(m), 1);
  Word rhs(std::vector<Letter>(static_cast<std::size_t>(n), 1));
  rhs.letters.push_back(0);
  return SemigroupPresentation(GeneratorSet(std::move(names)), {{lhs, rhs}});
}

namespace detail {
// Matches a single relation x y^m = y^n x (either orientation); returns
// (stable, base, m, n).
struct BsMatch {
  Letter stable, base;
  std::int64_t m, n;
};
inline std::optional<BsMatch> match_bs(SemigroupPresentation const& p) {
  if (p.rank() != 2 || p.relations().size() != 1) return std::nullopt;
  auto try_sides = [](Word const& l, Word const& r) -> std::optional<BsMatch> {
    if (l.size() < 2 || r.size() < 2) return std::nullopt;
    Letter x = l[0];
    if (r.letters.back() != x) return std::nullopt;
    Letter y = l[1];
    if (y == x) return std::nullopt;
    for (std::size_t i = 1; i < l.size(); ++i)
      if (l[i] != y) return std::nullopt;
    for (std::size_t i = 0; i + 1 < r.size(); ++i)
      if (r[i] != y) return std::nullopt;
    return BsMatch{x, y, static_cast<std::int64_t>(l.size() - 1),
                   static_cast<std::int64_t>(r.size() - 1)};
  };
  auto const& [u, v] = p.relations().front();
  if (auto m = try_sides(u, v)) return m;
  return try_sides(v, u);
}
}  // namespace detail

/// The free S-group <B | R> with the letter-wise inclusion.  Built-in
/// canonical-form engines are attached for free presentations (F_n),
/// commutator-only presentations (Z^d) and x y^m = y^n x (BS(m,n), dyadic
/// model for BS(1,2)); anything else gets the Generic family.
inline SGroup free_s_group_of(SemigroupPresentation const& p) {
  SGroup sg;
  sg.semigroup = p;
  sg.relators = relators_of(p);
  auto const rank = static_cast<std::uint32_t>(p.rank());
  if (p.is_free()) {
    sg.group = GroupFamily::free(rank);
    sg.eta = sg.group.standard_generators();
    sg.eta_injective = true;
  } else if (has_exact_normal_form(p) && p.is_commutative() && !p.declared_commutative()) {
    sg.group = GroupFamily::abelian(rank);
    sg.eta = sg.group.standard_generators();
    sg.eta_injective = true;
  } else if (auto bs = detail::match_bs(p)) {
    sg.group = (bs->m == 1 && bs->n == 2) ? GroupFamily::dyadic()
                                          : GroupFamily::baumslag_solitar(bs->m, bs->n);
    auto gens = sg.group.standard_generators();
    sg.eta.resize(2);
    sg.eta[bs->stable] = gens[0];
    sg.eta[bs->base] = gens[1];
    sg.eta_injective = true;
  } else {
    auto gg = std::make_shared<GenericGroup>();
    gg->generators = p.generators();
    gg->relators = *sg.relators;
    sg.group = GroupFamily::generic_group(gg);
    sg.eta = sg.group.standard_generators();
    sg.eta_injective = false;
  }
  sg.label = "free S-group " + sg.group.name();
  return sg;
}

/// Forces the Generic family even when a built-in engine would match.
inline SGroup generic_s_group_of(SemigroupPresentation const& p, std::size_t budget = 20000) {
  SGroup sg;
  sg.semigroup = p;
  sg.relators = relators_of(p);
  auto gg = std::make_shared<GenericGroup>();
  gg->generators = p.generators();
  gg->relators = *sg.relators;
  gg->budget = budget;
  sg.group = GroupFamily::generic_group(gg);
  sg.eta = sg.group.standard_generators();
  sg.label = "generic";
  return sg;
}

// --- Grothendieck group ---

/// Z^rank + Z/t_1 + ... with t_1 | t_2 | ... ; `basis[g]` gives generator g's
/// free coordinates followed by its torsion coordinates (reduced mod t_i).
struct AbelianStructure {
  std::size_t rank = 0;
  std::vector<BigInt> torsion;
  std::vector<std::vector<BigInt>> basis;
};

/// Grothendieck group of a commutative presentation: Z^B modulo the lattice of
/// letter-count differences.  The semigroup embeds only when it is
/// cancellative, which is assumed rather than checked.
inline AbelianStructure grothendieck_group(SemigroupPresentation const& p) {
  if (!p.is_commutative())
    throw NotDeclaredCommutative("presentation lacks commutators; add them or declare `commutative`");
  auto snf = smith_normal_form(relation_lattice(p));
  AbelianStructure out;
  std::size_t const n = p.rank();
  std::size_t const r = snf.invariants.size();
  out.rank = n - r;
  std::vector<std::size_t> torsion_cols;
  for (std::size_t j = 0; j < r; ++j)
    if (snf.invariants[j] != 1) {
      out.torsion.push_back(snf.invariants[j]);
      torsion_cols.push_back(j);
    }
  // x -> x * right sends the relation lattice onto the diagonal lattice
  for (std::size_t g = 0; g < n; ++g) {
    std::vector<BigInt> coords;
    for (std::size_t j = r; j < n; ++j) coords.push_back(snf.right(g, j));
    for (std::size_t t = 0; t < torsion_cols.size(); ++t) {
      BigInt v = snf.right(g, torsion_cols[t]) % out.torsion[t];
      if (v < 0) v += out.torsion[t];
      coords.push_back(v);
    }
    out.basis.push_back(std::move(coords));
  }
  return out;
}

}  // namespace natext
