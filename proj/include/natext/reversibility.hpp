#pragma once

// Left reversibility, the preorder g <=_S h  <=>  h g^-1 in eta(S), and the
// all-ones test for the group of right fractions.  Membership in eta(S) is
// decided exactly for the built-in embeddings:
//
//   N^d in Z^d          all coordinates >= 0
//   F_n^+ in F_n        reduced word has no inverse letters
//   F_2^+ in BS(1,2)    x -> 2^k x + c with k >= 1 and c an integer in [0, 2^k),
//                       or the identity (a: x -> 2x, b: x -> 2x + 1)
//   BS(1,2)^+           x -> 2^k x + c with k >= 0 and c a non-negative integer
//                       (a: x -> 2x, b: x -> x + 1)
//
// Anything else falls back to bounded word enumeration.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "natext/cayley.hpp"
#include "natext/csp.hpp"
#include "natext/error.hpp"
#include "natext/group.hpp"
#include "natext/words.hpp"

namespace natext {

enum class Leq { Yes, NoProven, Unknown };

inline char const* to_string(Leq v) {
  switch (v) {
    case Leq::Yes: return "Yes";
    case Leq::NoProven: return "NoProven";
    case Leq::Unknown: return "Unknown";
  }
  return "?";
}

struct LeqResult {
  Leq verdict = Leq::Unknown;
  std::optional<Word> witness;  // eta(witness) = h g^-1
  std::size_t bound = 0;        // word-length bound used by the fallback
};

enum class MembershipModel { None, Lattice, FreeMonoid, DyadicFree, DyadicPositive };

namespace detail {
inline bool eta_is(SGroup const& sg, std::vector<GroupElem> const& want) {
  if (sg.eta.size() != want.size()) return false;
  for (std::size_t i = 0; i < want.size(); ++i)
    if (!same_family(sg.eta[i], want[i]) || !(sg.eta[i] == want[i])) return false;
  return true;
}
}  // namespace detail

/// Which exact eta(S)-membership test applies to this S-group.
inline MembershipModel membership_model(SGroup const& sg) {
  switch (sg.group.kind) {
    case FamilyKind::Abelian:
      if (sg.rank() == sg.group.rank && detail::eta_is(sg, sg.group.standard_generators()))
        return MembershipModel::Lattice;
      break;
    case FamilyKind::Free:
      if (sg.rank() == sg.group.rank && detail::eta_is(sg, sg.group.standard_generators()))
        return MembershipModel::FreeMonoid;
      break;
    case FamilyKind::Dyadic:
      if (detail::eta_is(sg, {DyadicAffine{1, 0}, DyadicAffine{1, 1}})) return MembershipModel::DyadicFree;
      if (detail::eta_is(sg, {DyadicAffine{1, 0}, DyadicAffine{0, 1}}))
        return MembershipModel::DyadicPositive;
      break;
    default: break;
  }
  return MembershipModel::None;
}

inline bool has_exact_membership(SGroup const& sg) {
  return membership_model(sg) != MembershipModel::None;
}

/// Exact eta(S)-membership with a witness word, when a model applies.
/// Returns nullopt when no exact test exists; an engaged optional holding
/// nullopt means "not a member".
inline std::optional<std::optional<Word>> eta_membership(SGroup const& sg, GroupElem const& g) {
  switch (membership_model(sg)) {
    case MembershipModel::None: return std::nullopt;
    case MembershipModel::Lattice: {
      auto const& v = g.as<IntVector>().coords;
      Word w;
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] < 0) return std::optional<Word>{};
        w.letters.insert(w.letters.end(), static_cast<std::size_t>(v[i]), static_cast<Letter>(i));
      }
      return std::optional<Word>{w};
    }
    case MembershipModel::FreeMonoid: {
      auto const& w = g.as<FreeElem>().word;
      if (!w.positive()) return std::optional<Word>{};
      return std::optional<Word>{w.to_word()};
    }
    case MembershipModel::DyadicFree: {
      auto const& f = g.as<DyadicAffine>();
      if (f.is_identity()) return std::optional<Word>{Word{}};
      if (f.k < 1 || !f.c.is_integer()) return std::optional<Word>{};
      BigInt c = f.c.to_integer();
      if (c < 0 || c >= (BigInt(1) << static_cast<unsigned>(f.k))) return std::optional<Word>{};
      // eta(s_1 ... s_k) = 2^k x + sum_i bit(s_i) 2^{i-1}
      Word w;
      for (std::int64_t i = 0; i < f.k; ++i) {
        w.letters.push_back(static_cast<Letter>(static_cast<int>(c & 1)));
        c >>= 1;
      }
      return std::optional<Word>{w};
    }
    case MembershipModel::DyadicPositive: {
      auto const& f = g.as<DyadicAffine>();
      if (f.k < 0 || !f.c.is_integer()) return std::optional<Word>{};
      BigInt c = f.c.to_integer();
      if (c < 0) return std::optional<Word>{};
      if (c > 4096) throw InvalidArgument("membership witness too long to spell out");
      // b^c a^k : x -> 2^k x + c
      Word w(std::vector<Letter>(static_cast<std::size_t>(c), 1));
      w.letters.insert(w.letters.end(), static_cast<std::size_t>(f.k), 0);
      return std::optional<Word>{w};
    }
  }
  return std::nullopt;
}

/// g <=_S h, i.e. h g^-1 in eta(S).  Exact when a membership model applies,
/// otherwise a search over semigroup words of length <= L (Yes or Unknown).
inline LeqResult leq_S(SGroup const& sg, GroupElem const& g, GroupElem const& h, std::size_t L = 8) {
  require_same_family(g, h);
  GroupElem d = mul(h, inv(g));
  LeqResult r;
  r.bound = L;
  if (auto m = eta_membership(sg, d)) {
    if (*m) {
      r.verdict = Leq::Yes;
      r.witness = **m;
    } else {
      r.verdict = Leq::NoProven;
    }
    return r;
  }
  for (auto const& w : words_up_to(sg.rank(), L))
    if (equal(eta_apply(sg, w), d) == TriState::Equal) {
      r.verdict = Leq::Yes;
      r.witness = w;
      return r;
    }
  return r;
}

// --- left reversibility ---

enum class ReversibilityVerdict { WitnessFound, NoneUpTo, DisjointProven };

inline char const* to_string(ReversibilityVerdict v) {
  switch (v) {
    case ReversibilityVerdict::WitnessFound: return "WitnessFound";
    case ReversibilityVerdict::NoneUpTo: return "NoneUpTo";
    case ReversibilityVerdict::DisjointProven: return "DisjointProven";
  }
  return "?";
}

struct ReversibilityReport {
  Letter s = 0, t = 0;
  ReversibilityVerdict verdict = ReversibilityVerdict::NoneUpTo;
  std::optional<Word> x, y;  // s x = t y
  std::size_t bound = 0;
};

namespace detail {
template <typename Key, typename KeyFn>
std::vector<ReversibilityReport> intersect_pairs(std::size_t rank, std::size_t L, KeyFn&& key) {
  auto tails = words_up_to(rank, L);
  std::vector<ReversibilityReport> out;
  for (Letter s = 0; s < rank; ++s)
    for (Letter t = s + 1; t < rank; ++t) {
      ReversibilityReport r{s, t, ReversibilityVerdict::NoneUpTo, std::nullopt, std::nullopt, L};
      std::map<Key, Word> left;
      for (auto const& x : tails) left.emplace(key(Word{s} * x), x);
      for (auto const& y : tails) {
        auto it = left.find(key(Word{t} * y));
        if (it == left.end()) continue;
        r.verdict = ReversibilityVerdict::WitnessFound;
        r.x = it->second;
        r.y = y;
        break;
      }
      out.push_back(std::move(r));
    }
  return out;
}
}  // namespace detail

/// Per generator pair (s, t), s < t: x, y with s x = t y and |x|, |y| <= L.
/// A free presentation is answered analytically: distinct first letters
/// never meet.  Otherwise words are compared by exact normal form.
inline std::vector<ReversibilityReport> left_reversible_bounded(SemigroupPresentation const& p,
                                                                std::size_t L) {
  if (L < 1) throw InvalidArgument("length bound must be >= 1");
  if (p.is_free()) {
    std::vector<ReversibilityReport> out;
    for (Letter s = 0; s < p.rank(); ++s)
      for (Letter t = s + 1; t < p.rank(); ++t)
        out.push_back({s, t, ReversibilityVerdict::DisjointProven, std::nullopt, std::nullopt, L});
    return out;
  }
  if (!has_exact_normal_form(p))
    throw InvalidArgument("no exact normal form; pass an S-group with a faithful model");
  return detail::intersect_pairs<Word>(p.rank(), L, [&](Word const& w) { return normal_form(p, w); });
}

/// Same search, comparing eta-images in G (requires an injective eta into a
/// family with canonical forms).
inline std::vector<ReversibilityReport> left_reversible_bounded(SGroup const& sg, std::size_t L) {
  if (L < 1) throw InvalidArgument("length bound must be >= 1");
  if (!sg.eta_injective || !sg.group.canonical())
    throw InvalidArgument("S-group model is not faithful with canonical forms");
  return detail::intersect_pairs<GroupElem>(sg.rank(), L,
                                            [&](Word const& w) { return eta_apply(sg, w); });
}

// --- downward directedness ---

struct DirectedResult {
  std::optional<GroupElem> lower_bound;
  std::size_t radius = 0;
  /// Every membership test along the way was exact.
  bool exact = true;
};

/// Ball elements m with m <=_S f for all f in F; among them the first
/// (breadth-first) that is maximal for <=_S.
inline DirectedResult directed_bounded(SGroup const& sg, std::vector<GroupElem> const& F,
                                       std::size_t radius, std::size_t L = 8) {
  if (F.empty()) throw InvalidArgument("F must be non-empty");
  DirectedResult out;
  out.radius = radius;
  auto ball = build_ball(sg, radius);
  std::vector<GroupElem> bounds;
  for (auto const& m : ball.elements()) {
    bool all = true;
    for (auto const& f : F) {
      auto v = leq_S(sg, m, f, L).verdict;
      if (v == Leq::Unknown) out.exact = false;
      if (v != Leq::Yes) {
        all = false;
        break;
      }
    }
    if (all) bounds.push_back(m);
  }
  for (auto const& m : bounds) {
    bool maximal = true;
    for (auto const& m2 : bounds)
      if (!(m2 == m) && leq_S(sg, m, m2, L).verdict == Leq::Yes) {
        maximal = false;
        break;
      }
    if (maximal) {
      out.lower_bound = m;
      break;
    }
  }
  return out;
}

// --- the configuration x* ---

/// x*(g) = 1 iff 1_G <=_S g, on every ball element.
inline std::vector<Symbol> xstar_patch(SGroup const& sg, CayleyBall const& ball) {
  if (!has_exact_membership(sg))
    throw MembershipUndecidable("no exact eta(S)-membership test for '" + sg.label + "'");
  std::vector<Symbol> out;
  for (auto const& g : ball.elements()) out.push_back(*eta_membership(sg, g) ? 1 : 0);
  return out;
}

struct FractionsResult {
  std::size_t r = 0;         // window radius
  std::size_t search = 0;    // exhausted search radius R
  std::optional<GroupElem> witness;
  bool ok() const { return witness.has_value(); }
};

/// Some g in ball(R) with (g.x*) = 1 on ball(r), i.e. h g in eta(S) for all h
/// in ball(r).  A failure states only that ball(R) holds no such g.
inline FractionsResult check_fractions_by_subshift(SGroup const& sg, std::size_t r, std::size_t R) {
  if (R < r) throw InvalidArgument("search radius must be >= window radius");
  if (!has_exact_membership(sg))
    throw MembershipUndecidable("no exact eta(S)-membership test for '" + sg.label + "'");
  FractionsResult out{r, R, std::nullopt};
  auto window = build_ball(sg, r);
  auto search = build_ball(sg, R);
  for (auto const& g : search.elements()) {
    bool all = true;
    for (auto const& h : window.elements())
      if (!*eta_membership(sg, mul(h, g))) {
        all = false;
        break;
      }
    if (all) {
      out.witness = g;
      break;
    }
  }
  return out;
}

}  // namespace natext
