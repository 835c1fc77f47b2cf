#pragma once

// Natural G-extensions realized as G-subshifts.  G acts by (g.z)(h) = z(hg),
// so a pushed-forward pattern with domain eta(D) is placed at {eta(t) h} for
// every h, and a nearest-neighbour rule for s constrains (z(h), z(eta(s) h)).
// Ball problems restrict these constraints to placements lying inside a
// Cayley ball.  Any configuration of the extension restricts to a solution,
// so an unsatisfiable ball proves emptiness; a satisfiable ball proves
// nothing beyond its radius.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "natext/cayley.hpp"
#include "natext/csp.hpp"
#include "natext/error.hpp"
#include "natext/group.hpp"
#include "natext/parallel.hpp"
#include "natext/subshift.hpp"

namespace natext {

/// Forbidden pattern on G: values[i] at offsets[i] (an eta-image).
struct GPattern {
  std::vector<GroupElem> offsets;
  std::vector<Symbol> values;
};

/// G-side local rule obtained by pushing an S-spec forward along eta.
struct ConstraintTemplate {
  std::size_t alphabet = 0;
  std::vector<GPattern> patterns;
  /// Per semigroup generator: allowed (z(h), z(eta(s) h)), if constrained.
  std::vector<std::optional<Relation>> edge_rules;
};

/// P_eta = P o eta^{-1} for every forbidden pattern; nearest-neighbour and
/// coset rules move to eta(s)-labelled edges.  Throws EtaCollision when two
/// cells of one pattern share an eta-image but carry different values.
inline ConstraintTemplate pushforward_forbidden(SGroup const& sg, SubshiftSpec const& spec) {
  validate(spec);
  if (spec.semigroup.rank() != sg.rank())
    throw InvalidArgument("spec and S-group have different generator counts");
  ConstraintTemplate t;
  t.alphabet = spec.alphabet_size();
  t.edge_rules.assign(sg.rank(), std::nullopt);
  std::visit(
      [&](auto const& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, ForbiddenPatterns>) {
          for (auto const& p : r.patterns) {
            GPattern gp;
            for (std::size_t i = 0; i < p.domain.size(); ++i) {
              GroupElem g = eta_apply(sg, p.domain[i]);
              bool merged = false;
              for (std::size_t j = 0; j < gp.offsets.size(); ++j) {
                if (equal(gp.offsets[j], g) != TriState::Equal) continue;
                if (gp.values[j] != p.values[i])
                  throw EtaCollision("cells " + format_word(spec.semigroup.generators(), p.domain[i]) +
                                     " share an eta-image with different values");
                merged = true;
              }
              if (!merged) {
                gp.offsets.push_back(std::move(g));
                gp.values.push_back(p.values[i]);
              }
            }
            t.patterns.push_back(std::move(gp));
          }
        } else if constexpr (std::is_same_v<T, NearestNeighbor>) {
          for (Letter s = 0; s < r.rules.size(); ++s) t.edge_rules[s] = r.rules[s];
        } else {
          for (Letter s = 0; s < r.phi.size(); ++s) t.edge_rules[s] = detail::coset_step(r, r.phi[s]);
        }
      },
      spec.rule);
  return t;
}

/// Index of g in the ball; linear tri-state scan for non-canonical families.
inline std::optional<std::size_t> find_in_ball(CayleyBall const& ball, GroupElem const& g,
                                               bool canonical) {
  if (canonical) return ball.locate(g);
  if (auto i = ball.locate(g)) return i;
  for (std::size_t i = 0; i < ball.size(); ++i)
    if (equal(ball.element(i), g) == TriState::Equal) return i;
  return std::nullopt;
}

/// Constraint instances of a template on a ball.
inline Csp instantiate(SGroup const& sg, ConstraintTemplate const& t, CayleyBall const& ball) {
  Csp csp(ball.size(), t.alphabet);
  bool const canonical = sg.group.canonical();
  for (std::size_t h = 0; h < ball.size(); ++h) {
    for (Letter s = 0; s < t.edge_rules.size(); ++s) {
      if (!t.edge_rules[s]) continue;
      auto j = ball.neighbour(h, s, 1);
      if (j != CayleyBall::kOutside) csp.add_binary(h, static_cast<std::size_t>(j), *t.edge_rules[s]);
    }
    for (auto const& p : t.patterns) {
      std::vector<std::size_t> cells;
      for (auto const& off : p.offsets) {
        auto c = find_in_ball(ball, mul(off, ball.element(h)), canonical);
        if (!c) break;
        cells.push_back(*c);
      }
      if (cells.size() == p.offsets.size()) csp.add_nogood(cells, p.values);
    }
  }
  return csp;
}

/// Constraint instances of a template on an arbitrary finite cell set of a
/// canonical family (Folner windows, blocks).
inline Csp instantiate_window(SGroup const& sg, ConstraintTemplate const& t,
                              std::vector<GroupElem> const& cells) {
  if (!sg.group.canonical()) throw InvalidArgument("window instantiation needs canonical forms");
  std::map<GroupElem, std::size_t> index;
  for (std::size_t i = 0; i < cells.size(); ++i) index.emplace(cells[i], i);
  auto locate = [&](GroupElem const& g) -> std::optional<std::size_t> {
    auto it = index.find(g);
    if (it == index.end()) return std::nullopt;
    return it->second;
  };
  Csp csp(cells.size(), t.alphabet);
  for (std::size_t h = 0; h < cells.size(); ++h) {
    for (Letter s = 0; s < t.edge_rules.size(); ++s)
      if (t.edge_rules[s])
        if (auto j = locate(mul(sg.eta[s], cells[h]))) csp.add_binary(h, *j, *t.edge_rules[s]);
    for (auto const& p : t.patterns) {
      std::vector<std::size_t> hit;
      for (auto const& off : p.offsets) {
        auto c = locate(mul(off, cells[h]));
        if (!c) break;
        hit.push_back(*c);
      }
      if (hit.size() == p.offsets.size()) csp.add_nogood(hit, p.values);
    }
  }
  return csp;
}

struct ExtensionProblem {
  SGroup sg;
  SubshiftSpec spec;
  CayleyBall ball;
  ConstraintTemplate tmpl;
  Csp csp;
};

inline ExtensionProblem make_problem(SGroup const& sg, SubshiftSpec const& spec, std::size_t radius,
                                     BallOptions const& opts = {}) {
  ExtensionProblem p{sg, spec, build_ball(sg, radius, opts), pushforward_forbidden(sg, spec), {}};
  p.csp = instantiate(p.sg, p.tmpl, p.ball);
  return p;
}

/// Number of constraint violations of a full ball colouring, computed from
/// the template directly (independent of the constraint engine).
inline std::size_t ball_violations(ExtensionProblem const& p, std::vector<Symbol> const& z) {
  if (z.size() != p.ball.size()) throw InvalidArgument("colouring size differs from ball");
  std::size_t bad = 0;
  bool const canonical = p.sg.group.canonical();
  for (auto const& e : p.ball.edges()) {
    if (e.sign < 0 || !p.tmpl.edge_rules[e.gen]) continue;
    if (!(*p.tmpl.edge_rules[e.gen])(z[e.source], z[e.target])) ++bad;
  }
  for (std::size_t h = 0; h < p.ball.size(); ++h)
    for (auto const& pat : p.tmpl.patterns) {
      bool inside = true, hit = true;
      for (std::size_t i = 0; i < pat.offsets.size() && inside; ++i) {
        auto c = find_in_ball(p.ball, mul(pat.offsets[i], p.ball.element(h)), canonical);
        if (!c) inside = false;
        else hit = hit && z[*c] == pat.values[i];
      }
      if (inside && hit) ++bad;
    }
  return bad;
}

// --- reports ---

enum class Verdict { EmptyProven, ConsistentUpTo, PointExtendsUpTo, PointBlocked, SurjectiveUpTo, NotSurjectiveAt };

inline char const* to_string(Verdict v) {
  switch (v) {
    case Verdict::EmptyProven: return "EmptyProven";
    case Verdict::ConsistentUpTo: return "ConsistentUpTo";
    case Verdict::PointExtendsUpTo: return "PointExtendsUpTo";
    case Verdict::PointBlocked: return "PointBlocked";
    case Verdict::SurjectiveUpTo: return "SurjectiveUpTo";
    case Verdict::NotSurjectiveAt: return "NotSurjectiveAt";
  }
  return "?";
}

struct ExtensionReport {
  Verdict verdict = Verdict::ConsistentUpTo;
  std::size_t radius = 0;
  std::size_t ball_size = 0;
  std::optional<std::vector<Symbol>> witness;
  /// Irreducible unsatisfiable set of ball indices, with geodesic words.
  std::optional<std::vector<std::size_t>> core;
  std::vector<std::string> core_words;
  std::optional<Pattern> base;
  /// Surjectivity runs: patterns tried and those that failed to extend.
  std::size_t patterns_checked = 0;
  std::vector<Pattern> failures;
  /// Non-emptiness certified beyond the radius (coset rule, unobstructed).
  bool certified_nonempty = false;
  std::string note;

  bool ok() const {
    return verdict == Verdict::ConsistentUpTo || verdict == Verdict::PointExtendsUpTo ||
           verdict == Verdict::SurjectiveUpTo;
  }
};

struct SolveOptions {
  bool want_core = true;
};

namespace detail {
inline std::vector<std::size_t> descending(std::size_t n) {
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = n - 1 - i;
  return order;
}

inline void attach_core(ExtensionProblem const& p, Csp const& csp, ExtensionReport& r) {
  r.core = csp.minimal_unsat_core(descending(csp.vars()));
  for (auto i : *r.core)
    r.core_words.push_back(format_signed_word(p.sg.semigroup.generators(), geodesic_word(p.ball, i)));
}

// Ball cells carrying an S-pattern, i.e. eta(dom x).
inline std::vector<std::pair<std::size_t, Symbol>> place_base(ExtensionProblem const& p,
                                                              Pattern const& x) {
  std::vector<std::pair<std::size_t, Symbol>> cells;
  bool const canonical = p.sg.group.canonical();
  for (std::size_t i = 0; i < x.domain.size(); ++i) {
    auto c = find_in_ball(p.ball, eta_apply(p.sg, x.domain[i]), canonical);
    if (!c) throw InvalidArgument("base pattern does not fit in the ball");
    cells.emplace_back(*c, x.values[i]);
  }
  return cells;
}
}  // namespace detail

/// Any colouring of the ball, or EmptyProven(radius) with a core.
inline ExtensionReport solve_ball(ExtensionProblem const& p, SolveOptions const& opts = {}) {
  ExtensionReport r;
  r.radius = p.ball.radius();
  r.ball_size = p.ball.size();
  if (auto z = p.csp.solve()) {
    r.verdict = Verdict::ConsistentUpTo;
    r.witness = std::move(z);
    r.note = "ball colouring exists; not a proof of non-emptiness";
  } else {
    r.verdict = Verdict::EmptyProven;
    if (opts.want_core) detail::attach_core(p, p.csp, r);
  }
  return r;
}

/// A colouring agreeing with x on eta(dom x), or PointBlocked(radius).
inline ExtensionReport solve_ball(ExtensionProblem const& p, Pattern const& base,
                                  SolveOptions const& opts = {}) {
  ExtensionReport r;
  r.radius = p.ball.radius();
  r.ball_size = p.ball.size();
  r.base = base;
  Csp csp = p.csp;
  for (auto [c, v] : detail::place_base(p, base)) csp.fix(c, v);
  if (auto z = csp.solve()) {
    r.verdict = Verdict::PointExtendsUpTo;
    r.witness = std::move(z);
  } else {
    r.verdict = Verdict::PointBlocked;
    if (opts.want_core) detail::attach_core(p, csp, r);
  }
  return r;
}

// --- homomorphism obstruction for coset rules ---

struct Obstruction {
  bool obstructed = false;
  std::optional<SignedWord> relator;
  FiniteGroup::Index image = 0;
};

/// Obstructed iff some relator of G has non-identity phi-image.  Unobstructed
/// means phi extends to a homomorphism G -> F, so z(h) = phi(h) g is a
/// configuration of the extension.
inline Obstruction hom_obstruction(SGroup const& sg, SubshiftSpec const& spec) {
  if (spec.kind() != SpecKind::Coset) throw InvalidArgument("hom_obstruction needs a coset rule");
  if (!sg.relators) throw NoRelatorList("S-group '" + sg.label + "' has no relator list");
  auto const& c = spec.as<CosetRule>();
  auto const& f = *c.group;
  for (auto const& w : *sg.relators) {
    FiniteGroup::Index x = f.identity();
    for (auto l : w) {
      if (l.gen >= c.phi.size()) throw InvalidArgument("relator letter outside generator set");
      x = f.mul(x, l.sign > 0 ? c.phi[l.gen] : f.inv(c.phi[l.gen]));
    }
    if (x != f.identity()) return {true, w, x};
  }
  return {};
}

// --- bounded decision procedures ---

/// Solves radii 1..max_radius; the first unsatisfiable ball proves X_G empty.
inline ExtensionReport check_empty(SGroup const& sg, SubshiftSpec const& spec, std::size_t max_radius,
                                   BallOptions const& ball_opts = {}) {
  if (max_radius < 1) throw InvalidArgument("max_radius must be >= 1");
  ExtensionReport last;
  for (std::size_t r = 1; r <= max_radius; ++r) {
    last = solve_ball(make_problem(sg, spec, r, ball_opts));
    if (last.verdict == Verdict::EmptyProven) return last;
  }
  if (spec.kind() == SpecKind::Coset && sg.relators && !hom_obstruction(sg, spec).obstructed) {
    last.certified_nonempty = true;
    last.note = "coset rule unobstructed: phi extends to G, extension non-empty";
  }
  return last;
}

/// Extension of a locally admissible S-pattern to the ball.
inline ExtensionReport check_point_extensible(SGroup const& sg, SubshiftSpec const& spec,
                                              Pattern const& x, std::size_t radius,
                                              BallOptions const& ball_opts = {}) {
  if (!locally_admissible(spec, x)) throw InvalidArgument("base pattern is not locally admissible");
  auto p = make_problem(sg, spec, radius, ball_opts);
  if (x.empty()) {
    auto r = solve_ball(p);
    if (r.verdict == Verdict::ConsistentUpTo) r.verdict = Verdict::PointExtendsUpTo;
    else r.verdict = Verdict::PointBlocked;
    r.base = x;
    return r;
  }
  return solve_ball(p, x);
}

/// Every locally admissible S-pattern on s_window (every configuration
/// restricted to s_window, for coset rules) extends to the ball.
inline ExtensionReport check_surjective_up_to(SGroup const& sg, SubshiftSpec const& spec,
                                              std::size_t radius, std::vector<Word> s_window,
                                              BallOptions const& ball_opts = {}) {
  auto const window = canonical_window(spec.semigroup, std::move(s_window));
  std::vector<Pattern> bases;
  if (spec.kind() == SpecKind::Coset) {
    auto const& c = spec.as<CosetRule>();
    for (FiniteGroup::Index g = 0; g < c.group->order(); ++g) {
      Pattern x{window, {}};
      for (auto const& t : window) x.values.push_back(c.group->mul(c.image(t), g));
      bases.push_back(std::move(x));
    }
  } else {
    bases = admissible_patterns(spec, window);
  }
  auto const p = make_problem(sg, spec, radius, ball_opts);
  std::vector<char> extends(bases.size(), 0);
  parallel_for(bases.size(), [&](std::size_t i) {
    extends[i] = solve_ball(p, bases[i], SolveOptions{false}).verdict == Verdict::PointExtendsUpTo;
  });
  ExtensionReport r;
  r.radius = radius;
  r.ball_size = p.ball.size();
  r.patterns_checked = bases.size();
  for (std::size_t i = 0; i < bases.size(); ++i)
    if (!extends[i]) r.failures.push_back(bases[i]);
  r.verdict = r.failures.empty() ? Verdict::SurjectiveUpTo : Verdict::NotSurjectiveAt;
  return r;
}

}  // namespace natext
