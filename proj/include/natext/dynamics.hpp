#pragma once

// Folner boxes for N^d and Z^d, and cylinder-cover entropy estimates
// log N(F_n) / |F_n| where N(F_n) counts locally admissible patterns on the
// window.  The sup over all open covers is not attempted; every estimate here
// is for the cylinder partition.  Logarithms are natural.

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "natext/affine.hpp"
#include "natext/csp.hpp"
#include "natext/error.hpp"
#include "natext/extension.hpp"
#include "natext/group.hpp"
#include "natext/parallel.hpp"
#include "natext/subshift.hpp"

namespace natext {

enum class Lattice { Nat, Int };

/// F_n = [0, n)^d, or for Z^d optionally the centred box
/// [-floor(n/2), n - floor(n/2))^d of the same cardinality.
struct FolnerSequence {
  Lattice lattice = Lattice::Nat;
  std::uint32_t dim = 1;
  bool centered = false;

  std::vector<std::vector<std::int64_t>> window(std::size_t n) const {
    if (n < 1) throw InvalidArgument("window index must be >= 1");
    std::int64_t lo = (lattice == Lattice::Int && centered) ? -static_cast<std::int64_t>(n / 2) : 0;
    std::vector<std::vector<std::int64_t>> out;
    std::vector<std::int64_t> x(dim, lo);
    while (true) {
      out.push_back(x);
      std::size_t i = dim;
      while (i > 0) {
        --i;
        if (++x[i] < lo + static_cast<std::int64_t>(n)) break;
        x[i] = lo;
        if (i == 0) return out;
      }
      if (dim == 0) return out;
    }
  }

  std::size_t window_size(std::size_t n) const {
    std::size_t s = 1;
    for (std::uint32_t i = 0; i < dim; ++i) s *= n;
    return s;
  }
};

/// Folner boxes for a semigroup with a built-in Folner sequence: one free
/// generator (N) or a commutator presentation (N^d).  Free semigroups of rank
/// >= 2 have none.
inline FolnerSequence folner_for(SemigroupPresentation const& p) {
  if ((p.rank() == 1 && p.is_free()) || (has_exact_normal_form(p) && p.is_commutative()))
    return {Lattice::Nat, static_cast<std::uint32_t>(p.rank()), false};
  throw NotAmenableFamily("no built-in Folner sequence for this semigroup");
}

inline FolnerSequence folner_for(SGroup const& sg, bool centered = false) {
  if (sg.group.kind != FamilyKind::Abelian)
    throw NotAmenableFamily("no built-in Folner sequence for " + sg.group.name());
  return {Lattice::Int, sg.group.rank, centered};
}

/// |s F_n symmetric-difference F_n| / |F_n| for the unit translate along `gen`.
inline BigRational folner_defect(FolnerSequence const& fs, std::uint32_t gen, std::size_t n) {
  if (gen >= fs.dim) throw InvalidArgument("generator outside dimension");
  auto f = fs.window(n);
  std::map<std::vector<std::int64_t>, int> mark;
  for (auto const& x : f) mark[x] |= 1;
  for (auto x : f) {
    ++x[gen];
    mark[x] |= 2;
  }
  std::size_t diff = 0;
  for (auto const& [x, m] : mark) diff += (m != 3);
  return BigRational(BigInt(diff), BigInt(f.size()));
}

/// Natural logarithm of a positive big integer.
inline double big_log(BigInt const& x) {
  if (x <= 0) throw InvalidArgument("log of a non-positive integer");
  auto bits = boost::multiprecision::msb(x);
  if (bits < 1000) return std::log(x.convert_to<double>());
  auto shift = bits - 52;
  BigInt top = x >> shift;
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

struct EntropyEstimate {
  std::size_t n = 0;
  std::size_t window_size = 0;
  BigInt count;
  double estimate = 0;  // log(count) / window_size
  CountMethod method = CountMethod::Enumeration;
};

namespace detail {
inline Word lattice_word(std::vector<std::int64_t> const& x) {
  Word w;
  for (std::size_t i = 0; i < x.size(); ++i)
    w.letters.insert(w.letters.end(), static_cast<std::size_t>(x[i]), static_cast<Letter>(i));
  return w;
}

inline EntropyEstimate make_estimate(std::size_t n, std::size_t size, BigInt count, CountMethod m) {
  EntropyEstimate e{n, size, std::move(count), 0, m};
  e.estimate = e.count == 0 ? 0.0 : big_log(e.count) / static_cast<double>(size);
  return e;
}
}  // namespace detail

/// Estimates for n = 1..n_max on the semigroup side (N^d boxes).
inline std::vector<EntropyEstimate> entropy_estimate(SubshiftSpec const& spec, std::size_t n_max) {
  auto fs = folner_for(spec.semigroup);
  std::vector<EntropyEstimate> out(n_max);
  parallel_for(n_max, [&](std::size_t i) {
    std::size_t n = i + 1;
    std::vector<Word> window;
    for (auto const& x : fs.window(n)) window.push_back(detail::lattice_word(x));
    auto wc = window_count(spec, window);
    out[i] = detail::make_estimate(n, wc.window.size(), wc.count, wc.method);
  });
  return out;
}

/// Estimates on the group side: the pushforward of `spec` along eta counted
/// on Z^d boxes.
inline std::vector<EntropyEstimate> entropy_estimate(SGroup const& sg, SubshiftSpec const& spec,
                                                     std::size_t n_max, bool centered = true) {
  auto fs = folner_for(sg, centered);
  auto tmpl = pushforward_forbidden(sg, spec);
  std::vector<EntropyEstimate> out(n_max);
  parallel_for(n_max, [&](std::size_t i) {
    std::size_t n = i + 1;
    std::vector<GroupElem> cells;
    for (auto const& x : fs.window(n)) cells.emplace_back(IntVector{x});
    out[i] = detail::make_estimate(n, cells.size(), instantiate_window(sg, tmpl, cells).count(),
                                   CountMethod::Enumeration);
  });
  return out;
}

struct EntropyRow {
  std::size_t n = 0;
  std::size_t window_size = 0;
  BigInt count_s, count_g;
  double h_s = 0, h_g = 0;
  double difference() const { return std::fabs(h_s - h_g); }
};

/// Side-by-side estimates for an S-subshift and its pushforward to the
/// receiving group, on windows of equal cardinality.
inline std::vector<EntropyRow> entropy_compare(SGroup const& sg, SubshiftSpec const& spec,
                                               std::size_t n_max) {
  auto s = entropy_estimate(spec, n_max);
  auto g = entropy_estimate(sg, spec, n_max);
  std::vector<EntropyRow> rows;
  for (std::size_t i = 0; i < n_max; ++i) {
    if (s[i].window_size != g[i].window_size) throw InvalidArgument("window sizes differ");
    rows.push_back({s[i].n, s[i].window_size, s[i].count, g[i].count, s[i].estimate, g[i].estimate});
  }
  return rows;
}

/// Transfer matrix of the pushforward of a one-generator spec to Z, rebuilt
/// from the G-side constraint template on blocks of Z.
inline TransferMatrix pushforward_transfer_matrix(SGroup const& sg, SubshiftSpec const& spec) {
  if (sg.group.kind != FamilyKind::Abelian || sg.group.rank != 1 || sg.rank() != 1)
    throw NotSingleGenerator("pushforward transfer matrix needs N inside Z");
  auto tmpl = pushforward_forbidden(sg, spec);
  std::int64_t span = 2;
  for (auto const& p : tmpl.patterns) {
    std::int64_t lo = 0, hi = 0;
    bool first = true;
    for (auto const& off : p.offsets) {
      auto v = off.as<IntVector>().coords[0];
      lo = first ? v : std::min(lo, v);
      hi = first ? v : std::max(hi, v);
      first = false;
    }
    span = std::max(span, hi - lo + 1);
  }
  auto blocks = [&](std::int64_t len) {
    std::vector<GroupElem> cells;
    for (std::int64_t i = 0; i < len; ++i) cells.emplace_back(IntVector{{i}});
    std::vector<std::vector<Symbol>> out;
    instantiate_window(sg, tmpl, cells).enumerate([&](Csp::Assignment const& x) {
      out.push_back(x);
      return true;
    });
    std::sort(out.begin(), out.end());
    return out;
  };
  TransferMatrix tm;
  tm.block = static_cast<std::size_t>(span - 1);
  tm.states = blocks(span - 1);
  std::map<std::vector<Symbol>, std::size_t> id;
  for (std::size_t i = 0; i < tm.states.size(); ++i) id.emplace(tm.states[i], i);
  tm.matrix = Matrix<BigInt>(tm.states.size(), tm.states.size());
  for (auto const& g : blocks(span)) {
    std::vector<Symbol> u(g.begin(), g.end() - 1), v(g.begin() + 1, g.end());
    tm.matrix(id.at(u), id.at(v)) = 1;
  }
  return tm;
}

inline bool check_transitive_pushforward(SGroup const& sg, SubshiftSpec const& spec) {
  return irreducible(pushforward_transfer_matrix(sg, spec).matrix);
}

}  // namespace natext
