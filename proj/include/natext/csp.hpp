#pragma once

// Finite-domain constraint engine shared by pattern counting and the ball
// solver: binary relation constraints with arc consistency, forbidden-tuple
// (nogood) constraints with unit propagation, smallest-domain-first search.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "natext/error.hpp"
#include "natext/snf.hpp"

namespace natext {

using Symbol = std::uint32_t;
using DomainMask = std::uint64_t;

inline constexpr std::size_t kMaxAlphabet = 64;

/// Square boolean matrix over the alphabet: allowed(q, r).
class Relation {
 public:
  Relation() = default;
  explicit Relation(std::size_t k, bool fill = false) : k_(k), bits_(k * k, fill) {}

  static Relation from_pairs(std::size_t k, std::vector<std::pair<Symbol, Symbol>> const& pairs) {
    Relation r(k);
    for (auto [a, b] : pairs) r.set(a, b);
    return r;
  }

  std::size_t size() const noexcept { return k_; }
  bool operator()(Symbol a, Symbol b) const { return bits_.at(a * k_ + b); }
  void set(Symbol a, Symbol b, bool v = true) { bits_.at(a * k_ + b) = v; }

  Relation transpose() const {
    Relation t(k_);
    for (Symbol a = 0; a < k_; ++a)
      for (Symbol b = 0; b < k_; ++b) t.set(b, a, (*this)(a, b));
    return t;
  }

  bool operator==(Relation const&) const = default;

 private:
  std::size_t k_ = 0;
  std::vector<bool> bits_;
};

class Csp {
 public:
  using Assignment = std::vector<Symbol>;

  Csp() = default;
  Csp(std::size_t vars, std::size_t alphabet) : alphabet_(alphabet) {
    if (alphabet == 0 || alphabet > kMaxAlphabet)
      throw InvalidArgument("alphabet size must be in 1..64");
    full_ = alphabet == 64 ? ~DomainMask{0} : ((DomainMask{1} << alphabet) - 1);
    domains_.assign(vars, full_);
    bin_watch_.resize(vars);
    ng_watch_.resize(vars);
  }

  std::size_t vars() const noexcept { return domains_.size(); }
  std::size_t alphabet() const noexcept { return alphabet_; }
  std::vector<DomainMask> const& initial_domains() const noexcept { return domains_; }

  void restrict(std::size_t var, DomainMask mask) { domains_.at(var) &= mask; }
  void fix(std::size_t var, Symbol s) { restrict(var, DomainMask{1} << s); }

  /// (x[u], x[v]) must be allowed by `rel`.
  void add_binary(std::size_t u, std::size_t v, Relation const& rel) {
    if (rel.size() != alphabet_) throw InvalidArgument("relation size differs from alphabet");
    Binary b{u, v, std::vector<DomainMask>(alphabet_, 0), std::vector<DomainMask>(alphabet_, 0)};
    for (Symbol a = 0; a < alphabet_; ++a)
      for (Symbol c = 0; c < alphabet_; ++c)
        if (rel(a, c)) {
          b.fwd[a] |= DomainMask{1} << c;
          b.bwd[c] |= DomainMask{1} << a;
        }
    if (u == v) {
      // unary: x[u] must satisfy rel(x, x)
      DomainMask m = 0;
      for (Symbol a = 0; a < alphabet_; ++a)
        if (rel(a, a)) m |= DomainMask{1} << a;
      self_loops_.push_back({u, m});
      domains_[u] &= m;
      return;
    }
    bin_watch_.at(u).push_back(bins_.size());
    bin_watch_.at(v).push_back(bins_.size());
    bins_.push_back(std::move(b));
  }

  /// The assignment x[cells[i]] = values[i] (for all i) is forbidden.
  void add_nogood(std::vector<std::size_t> cells, std::vector<Symbol> values) {
    if (cells.size() != values.size()) throw InvalidArgument("nogood arity mismatch");
    // merge repeated cells; conflicting repeats make the nogood vacuous
    Nogood ng;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      bool dup = false;
      for (std::size_t j = 0; j < ng.cells.size(); ++j)
        if (ng.cells[j] == cells[i]) {
          if (ng.values[j] != values[i]) return;
          dup = true;
        }
      if (!dup) {
        ng.cells.push_back(cells[i]);
        ng.values.push_back(values[i]);
      }
    }
    if (ng.cells.empty()) throw InvalidArgument("empty nogood");
    for (auto c : ng.cells) ng_watch_.at(c).push_back(ngs_.size());
    ngs_.push_back(std::move(ng));
  }

  std::size_t constraint_count() const noexcept { return bins_.size() + ngs_.size(); }

  /// True iff var appears in no constraint.
  bool unconstrained(std::size_t var) const {
    return bin_watch_[var].empty() && ng_watch_[var].empty();
  }

  /// Arc consistency / unit propagation to a fixpoint.  Returns false on a
  /// wiped-out domain.
  bool propagate(std::vector<DomainMask>& dom) const {
    std::vector<std::size_t> queue;
    std::vector<bool> queued(dom.size(), false);
    for (std::size_t v = 0; v < dom.size(); ++v) {
      if (dom[v] == 0) return false;
      queue.push_back(v);
      queued[v] = true;
    }
    auto touch = [&](std::size_t v) {
      if (!queued[v]) {
        queued[v] = true;
        queue.push_back(v);
      }
    };
    while (!queue.empty()) {
      std::size_t v = queue.back();
      queue.pop_back();
      queued[v] = false;
      for (auto id : bin_watch_[v]) {
        auto const& b = bins_[id];
        if (!revise(dom, b.u, b.v, b.fwd, touch)) return false;
        if (!revise(dom, b.v, b.u, b.bwd, touch)) return false;
      }
      for (auto id : ng_watch_[v]) {
        auto const& ng = ngs_[id];
        std::ptrdiff_t open = -1;
        bool live = true;
        for (std::size_t i = 0; i < ng.cells.size() && live; ++i) {
          DomainMask bit = DomainMask{1} << ng.values[i];
          DomainMask d = dom[ng.cells[i]];
          if (!(d & bit)) {
            live = false;  // already satisfied
          } else if (d != bit) {
            if (open >= 0) live = false;  // two undecided cells
            else open = static_cast<std::ptrdiff_t>(i);
          }
        }
        if (!live) continue;
        if (open < 0) return false;  // forbidden tuple fully present
        auto c = ng.cells[static_cast<std::size_t>(open)];
        dom[c] &= ~(DomainMask{1} << ng.values[static_cast<std::size_t>(open)]);
        if (dom[c] == 0) return false;
        touch(c);
      }
    }
    return true;
  }

  /// First solution in deterministic search order, if any.
  std::optional<Assignment> solve() const {
    std::optional<Assignment> found;
    search(domains_, [&](std::vector<DomainMask> const& d) {
      found = to_assignment(d);
      return false;
    });
    return found;
  }

  bool satisfiable() const { return solve().has_value(); }

  /// Visits every solution until the callback returns false.
  void enumerate(std::function<bool(Assignment const&)> const& visit) const {
    search(domains_, [&](std::vector<DomainMask> const& d) { return visit(to_assignment(d)); });
  }

  /// Number of solutions, by dynamic programming over variables in index
  /// order.  The state is the assignment of the frontier: processed variables
  /// that still occur in a constraint with an unprocessed one.  Cost is
  /// exponential only in the frontier width (1 for intervals of Z, n for
  /// n x n boxes with row-major numbering).
  BigInt count() const {
    std::size_t const n = vars();
    std::vector<std::size_t> last_use(n);
    for (std::size_t v = 0; v < n; ++v) last_use[v] = v;
    std::vector<std::vector<std::size_t>> bins_at(n), ngs_at(n);
    for (std::size_t i = 0; i < bins_.size(); ++i) {
      auto const& b = bins_[i];
      std::size_t m = std::max(b.u, b.v);
      bins_at[m].push_back(i);
      last_use[b.u] = std::max(last_use[b.u], m);
      last_use[b.v] = std::max(last_use[b.v], m);
    }
    for (std::size_t i = 0; i < ngs_.size(); ++i) {
      auto const& ng = ngs_[i];
      std::size_t m = *std::max_element(ng.cells.begin(), ng.cells.end());
      ngs_at[m].push_back(i);
      for (auto c : ng.cells) last_use[c] = std::max(last_use[c], m);
    }
    std::vector<std::size_t> frontier;
    std::vector<std::size_t> pos(n, 0);
    std::map<std::vector<Symbol>, BigInt> states{{{}, BigInt(1)}};
    for (std::size_t v = 0; v < n; ++v) {
      pos[v] = frontier.size();
      frontier.push_back(v);
      std::vector<std::size_t> keep_idx;
      std::vector<std::size_t> next_frontier;
      for (std::size_t i = 0; i < frontier.size(); ++i)
        if (last_use[frontier[i]] > v) {
          keep_idx.push_back(i);
          next_frontier.push_back(frontier[i]);
        }
      std::map<std::vector<Symbol>, BigInt> next;
      std::vector<Symbol> x;
      for (auto const& [st, ways] : states) {
        x = st;
        x.push_back(0);
        for (Symbol a = 0; a < alphabet_; ++a) {
          if (!(domains_[v] & (DomainMask{1} << a))) continue;
          x.back() = a;
          bool ok = true;
          for (auto i : bins_at[v]) {
            auto const& b = bins_[i];
            if (!(b.fwd[x[pos[b.u]]] & (DomainMask{1} << x[pos[b.v]]))) {
              ok = false;
              break;
            }
          }
          for (std::size_t k = 0; ok && k < ngs_at[v].size(); ++k) {
            auto const& ng = ngs_[ngs_at[v][k]];
            bool hit = true;
            for (std::size_t j = 0; j < ng.cells.size() && hit; ++j) hit = x[pos[ng.cells[j]]] == ng.values[j];
            ok = !hit;
          }
          if (!ok) continue;
          std::vector<Symbol> key;
          key.reserve(keep_idx.size());
          for (auto i : keep_idx) key.push_back(x[i]);
          next[std::move(key)] += ways;
        }
      }
      states = std::move(next);
      frontier = std::move(next_frontier);
      for (std::size_t i = 0; i < frontier.size(); ++i) pos[frontier[i]] = i;
      if (states.empty()) return 0;
    }
    BigInt total = 0;
    for (auto const& [st, ways] : states) total += ways;
    return total;
  }

  /// Number of solutions by exhaustive search (reference for count()).
  BigInt count_by_search() const {
    BigInt total = 0;
    search(domains_, [&](std::vector<DomainMask> const&) {
      total += 1;
      return true;
    });
    return total;
  }

  /// True iff the assignment violates no constraint and respects domains.
  bool check(Assignment const& x) const {
    if (x.size() != vars()) return false;
    for (std::size_t v = 0; v < x.size(); ++v)
      if (!(domains_[v] & (DomainMask{1} << x[v]))) return false;
    for (auto const& b : bins_)
      if (!(b.fwd[x[b.u]] & (DomainMask{1} << x[b.v]))) return false;
    for (auto const& ng : ngs_) {
      bool hit = true;
      for (std::size_t i = 0; i < ng.cells.size() && hit; ++i) hit = x[ng.cells[i]] == ng.values[i];
      if (hit) return false;
    }
    return true;
  }

  /// Sub-problem on the variables with keep[v] set; constraints that touch a
  /// dropped variable are discarded, dropped variables become unconstrained.
  Csp restricted(std::vector<bool> const& keep) const {
    Csp out(vars(), alphabet_);
    for (std::size_t v = 0; v < vars(); ++v) out.domains_[v] = keep[v] ? domains_[v] : full_;
    for (auto const& b : bins_) {
      if (!keep[b.u] || !keep[b.v]) continue;
      out.bin_watch_[b.u].push_back(out.bins_.size());
      out.bin_watch_[b.v].push_back(out.bins_.size());
      out.bins_.push_back(b);
    }
    for (auto const& ng : ngs_) {
      bool all = true;
      for (auto c : ng.cells) all = all && keep[c];
      if (!all) continue;
      for (auto c : ng.cells) out.ng_watch_[c].push_back(out.ngs_.size());
      out.ngs_.push_back(ng);
    }
    return out;
  }

  /// Greedy deletion-based minimal unsatisfiable variable set.  Variables are
  /// tried for deletion in `order`; the result is irreducible: dropping any
  /// remaining variable makes the sub-problem satisfiable.
  std::vector<std::size_t> minimal_unsat_core(std::vector<std::size_t> const& order) const {
    std::vector<bool> keep(vars(), true);
    if (restricted(keep).satisfiable()) throw InvalidArgument("problem is satisfiable");
    for (auto v : order) {
      keep[v] = false;
      if (restricted(keep).satisfiable()) keep[v] = true;
    }
    std::vector<std::size_t> core;
    for (std::size_t v = 0; v < vars(); ++v)
      if (keep[v]) core.push_back(v);
    return core;
  }

 private:
  struct Binary {
    std::size_t u, v;
    std::vector<DomainMask> fwd;  // value of u -> allowed values of v
    std::vector<DomainMask> bwd;  // value of v -> allowed values of u
  };
  struct Nogood {
    std::vector<std::size_t> cells;
    std::vector<Symbol> values;
  };
  struct SelfLoop {
    std::size_t var;
    DomainMask mask;
  };

  template <typename Touch>
  static bool revise(std::vector<DomainMask>& dom, std::size_t x, std::size_t y,
                     std::vector<DomainMask> const& support, Touch&& touch) {
    DomainMask keep = 0;
    DomainMask dx = dom[x];
    while (dx) {
      auto a = static_cast<Symbol>(std::countr_zero(dx));
      dx &= dx - 1;
      if (support[a] & dom[y]) keep |= DomainMask{1} << a;
    }
    if (keep != dom[x]) {
      dom[x] = keep;
      if (keep == 0) return false;
      touch(x);
    }
    return true;
  }

  static Assignment to_assignment(std::vector<DomainMask> const& d) {
    Assignment x(d.size());
    for (std::size_t v = 0; v < d.size(); ++v) x[v] = static_cast<Symbol>(std::countr_zero(d[v]));
    return x;
  }

  // Depth-first search; `leaf` returns false to stop.
  template <typename Leaf>
  void search(std::vector<DomainMask> dom, Leaf&& leaf) const {
    bool stop = false;
    search_rec(std::move(dom), leaf, stop);
  }

  template <typename Leaf>
  void search_rec(std::vector<DomainMask> dom, Leaf& leaf, bool& stop) const {
    if (stop || !propagate(dom)) return;
    std::size_t best = dom.size();
    int best_size = 65;
    for (std::size_t v = 0; v < dom.size(); ++v) {
      int s = std::popcount(dom[v]);
      if (s > 1 && s < best_size) {
        best = v;
        best_size = s;
      }
    }
    if (best == dom.size()) {
      if (!leaf(dom)) stop = true;
      return;
    }
    DomainMask d = dom[best];
    while (d && !stop) {
      auto a = static_cast<Symbol>(std::countr_zero(d));
      d &= d - 1;
      auto next = dom;
      next[best] = DomainMask{1} << a;
      search_rec(std::move(next), leaf, stop);
    }
  }

  std::size_t alphabet_ = 0;
  DomainMask full_ = 0;
  std::vector<DomainMask> domains_;
  std::vector<Binary> bins_;
  std::vector<Nogood> ngs_;
  std::vector<SelfLoop> self_loops_;
  std::vector<std::vector<std::size_t>> bin_watch_;
  std::vector<std::vector<std::size_t>> ng_watch_;
};

}  // namespace natext
