#pragma once

// Exhaustive reference for the ball extension problem.  Placements are
// recomputed from eta and group multiplication; nothing here goes through
// the pushforward template or the constraint engine.

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <vector>

#include "natext/natext.hpp"

namespace oracle {

using namespace natext;

struct Check {
  std::vector<std::size_t> cells;
  // true when the values at `cells` are acceptable
  std::function<bool(std::vector<Symbol> const&)> ok;
};

inline std::vector<Check> ball_checks(SGroup const& sg, SubshiftSpec const& spec,
                                      std::vector<GroupElem> const& elems) {
  std::map<GroupElem, std::size_t> at;
  for (std::size_t i = 0; i < elems.size(); ++i) at.emplace(elems[i], i);
  std::vector<Check> out;
  for (std::size_t h = 0; h < elems.size(); ++h) {
    std::visit(
        [&](auto const& rule) {
          using T = std::decay_t<decltype(rule)>;
          if constexpr (std::is_same_v<T, ForbiddenPatterns>) {
            for (auto const& p : rule.patterns) {
              Check c;
              bool inside = true;
              for (auto const& t : p.domain) {
                auto it = at.find(mul(eta_apply(sg, t), elems[h]));
                if (it == at.end()) {
                  inside = false;
                  break;
                }
                c.cells.push_back(it->second);
              }
              if (!inside) continue;
              auto values = p.values;
              c.ok = [values](std::vector<Symbol> const& v) { return v != values; };
              out.push_back(std::move(c));
            }
          } else {
            for (Letter s = 0; s < sg.rank(); ++s) {
              auto it = at.find(mul(sg.eta[s], elems[h]));
              if (it == at.end()) continue;
              Check c;
              c.cells = {h, it->second};
              if constexpr (std::is_same_v<T, NearestNeighbor>) {
                auto rel = rule.rules[s];
                c.ok = [rel](std::vector<Symbol> const& v) { return rel(v[0], v[1]); };
              } else {
                auto f = rule.group;
                auto m = rule.phi[s];
                c.ok = [f, m](std::vector<Symbol> const& v) { return v[1] == f->mul(m, v[0]); };
              }
              out.push_back(std::move(c));
            }
          }
        },
        spec.rule);
  }
  return out;
}

inline bool satisfies(std::vector<Check> const& checks, std::vector<Symbol> const& z) {
  std::vector<Symbol> v;
  for (auto const& c : checks) {
    v.clear();
    for (auto i : c.cells) v.push_back(z[i]);
    if (!c.ok(v)) return false;
  }
  return true;
}

/// Whether some colouring of the cells in `keep` satisfies every check lying
/// entirely inside `keep`.
inline bool exists_colouring(std::vector<Check> const& checks, std::size_t cells, std::size_t k,
                             std::vector<bool> const& keep) {
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < cells; ++i)
    if (keep[i]) free.push_back(i);
  std::vector<Check> inner;
  for (auto const& c : checks) {
    bool in = true;
    for (auto i : c.cells) in = in && keep[i];
    if (in) inner.push_back(c);
  }
  std::vector<Symbol> z(cells, 0);
  while (true) {
    if (satisfies(inner, z)) return true;
    std::size_t j = 0;
    while (j < free.size() && ++z[free[j]] == k) z[free[j++]] = 0;
    if (j == free.size()) return false;
  }
}

inline bool exists_colouring(std::vector<Check> const& checks, std::size_t cells, std::size_t k) {
  return exists_colouring(checks, cells, k, std::vector<bool>(cells, true));
}

inline std::size_t count_colourings(std::vector<Check> const& checks, std::size_t cells, std::size_t k) {
  std::vector<Symbol> z(cells, 0);
  std::size_t total = 0;
  while (true) {
    total += satisfies(checks, z);
    std::size_t j = 0;
    while (j < cells && ++z[j] == k) z[j++] = 0;
    if (j == cells) return total;
  }
}

/// Largest eigenvalue of a non-negative matrix by power iteration.
inline double perron_root(Matrix<BigInt> const& m, int iterations = 2000) {
  std::size_t const n = m.rows();
  std::vector<double> v(n, 1.0), w(n);
  double lambda = 0;
  for (int it = 0; it < iterations; ++it) {
    double norm = 0;
    for (std::size_t i = 0; i < n; ++i) {
      w[i] = 0;
      for (std::size_t j = 0; j < n; ++j) w[i] += m(i, j).convert_to<double>() * v[j];
      norm = std::max(norm, w[i]);
    }
    if (norm == 0) return 0;
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / norm;
    lambda = norm;
  }
  return lambda;
}

/// Words of length n whose consecutive letters are related, by dynamic
/// programming over the last letter.
inline BigInt walk_count(Relation const& r, std::size_t n) {
  std::size_t const k = r.size();
  std::vector<BigInt> end(k, 1), next(k);
  for (std::size_t step = 1; step < n; ++step) {
    for (std::size_t q = 0; q < k; ++q) {
      next[q] = 0;
      for (std::size_t p = 0; p < k; ++p)
        if (r(static_cast<Symbol>(p), static_cast<Symbol>(q))) next[q] += end[p];
    }
    end.swap(next);
  }
  BigInt total = 0;
  for (auto const& x : end) total += x;
  return total;
}

/// A random S-group with a small ball, a random spec over it, and a radius
/// keeping the ball at <= 12 cells.
struct Case {
  SGroup sg;
  SubshiftSpec spec;
  std::size_t radius = 1;
};

inline Case random_case(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, 5), alpha(1, 3), coin(0, 3);
  Case c;
  switch (pick(rng)) {
    case 0:
      c.sg = lattice_in_integers({"a"});
      c.radius = std::uniform_int_distribution<std::size_t>(1, 5)(rng);
      break;
    case 1:
      c.sg = lattice_in_integers({"x", "y"});
      c.radius = 1;
      break;
    case 2:
      c.sg = free_monoid_in_free_group({"a", "b"});
      c.radius = 1;
      break;
    case 3:
      c.sg = free_monoid_in_bs12();
      c.radius = 1;
      break;
    case 4: {
      // N inside Z/n: cyclic balls with wrap-around constraints
      auto n = std::uniform_int_distribution<std::uint32_t>(2, 7)(rng);
      auto f = std::make_shared<FiniteGroup const>(FiniteGroup::cyclic(n));
      c.sg.semigroup = SemigroupPresentation::free({"a"});
      c.sg.group = GroupFamily::finite_group(f);
      c.sg.eta = {FiniteElem{f, 1}};
      c.sg.label = "N in Z/" + std::to_string(n);
      c.radius = n;
      break;
    }
    default: {
      auto f = std::make_shared<FiniteGroup const>(FiniteGroup::symmetric(3));
      c.sg.semigroup = SemigroupPresentation::free({"a", "b"});
      c.sg.group = GroupFamily::finite_group(f);
      c.sg.eta = {FiniteElem{f, f->parse_permutation("(12)")}, FiniteElem{f, f->parse_permutation("(123)")}};
      c.sg.label = "F2+ onto S3";
      c.radius = 3;
      break;
    }
  }
  std::size_t const rank = c.sg.rank();
  std::size_t k = static_cast<std::size_t>(alpha(rng));
  c.spec = full_shift(c.sg.semigroup, k);
  if (coin(rng) < 2) {
    NearestNeighbor nn;
    for (std::size_t s = 0; s < rank; ++s) {
      Relation r(k);
      for (Symbol p = 0; p < k; ++p)
        for (Symbol q = 0; q < k; ++q)
          if (coin(rng) != 0) r.set(p, q);
      nn.rules.push_back(r);
    }
    c.spec.rule = nn;
  } else {
    ForbiddenPatterns fp;
    auto words = words_up_to(rank, 2);
    std::uniform_int_distribution<std::size_t> npat(1, 3), dom(1, 3), wi(0, words.size() - 1);
    std::uniform_int_distribution<Symbol> sym(0, static_cast<Symbol>(k - 1));
    for (std::size_t i = npat(rng); i > 0; --i) {
      Pattern p;
      for (std::size_t j = dom(rng); j > 0; --j) {
        auto w = words[wi(rng)];
        if (p.at(w)) continue;
        p.domain.push_back(w);
        p.values.push_back(sym(rng));
      }
      fp.patterns.push_back(p);
    }
    c.spec.rule = fp;
  }
  return c;
}

}  // namespace oracle
