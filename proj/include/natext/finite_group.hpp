#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "natext/error.hpp"

namespace natext {

/// A finite group given by its multiplication table.
class FiniteGroup {
 public:
  using Index = std::uint32_t;

  FiniteGroup() = default;

  /// Validates the table: Latin square, two-sided identity, associativity.
  explicit FiniteGroup(std::vector<std::vector<Index>> table,
                       std::vector<std::string> labels = {})
      : table_(std::move(table)), labels_(std::move(labels)) {
    std::size_t const n = table_.size();
    if (n == 0) throw InvalidArgument("finite group must be non-empty");
    for (auto const& row : table_) {
      if (row.size() != n) throw InvalidArgument("multiplication table is not square");
      std::vector<bool> seen(n, false);
      for (auto x : row) {
        if (x >= n || seen[x]) throw InvalidArgument("table row is not a permutation");
        seen[x] = true;
      }
    }
    for (std::size_t c = 0; c < n; ++c) {
      std::vector<bool> seen(n, false);
      for (std::size_t r = 0; r < n; ++r) {
        if (seen[table_[r][c]]) throw InvalidArgument("table column is not a permutation");
        seen[table_[r][c]] = true;
      }
    }
    std::optional<Index> id;
    for (Index e = 0; e < n && !id; ++e) {
      bool ok = true;
      for (Index x = 0; x < n && ok; ++x) ok = table_[e][x] == x && table_[x][e] == x;
      if (ok) id = e;
    }
    if (!id) throw InvalidArgument("multiplication table has no identity");
    identity_ = *id;
    for (Index x = 0; x < n; ++x)
      for (Index y = 0; y < n; ++y)
        for (Index z = 0; z < n; ++z)
          if (table_[table_[x][y]][z] != table_[x][table_[y][z]])
            throw InvalidArgument("multiplication table is not associative");
    inverse_.assign(n, 0);
    for (Index x = 0; x < n; ++x)
      for (Index y = 0; y < n; ++y)
        if (table_[x][y] == identity_) inverse_[x] = y;
    if (labels_.empty())
      for (Index x = 0; x < n; ++x) labels_.push_back(std::to_string(x));
    if (labels_.size() != n) throw InvalidArgument("label count differs from order");
  }

  /// Z/n with elements 0..n-1.
  static FiniteGroup cyclic(std::uint32_t n) {
    std::vector<std::vector<Index>> t(n, std::vector<Index>(n));
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) t[i][j] = (i + j) % n;
    return FiniteGroup(std::move(t));
  }

  /// Symmetric group on {1..k}; elements are permutations in lexicographic
  /// order of their image lists, composed as functions: (p*q)(i) = p(q(i)).
  static FiniteGroup symmetric(std::uint32_t k) {
    std::vector<std::vector<Index>> perms;
    std::vector<Index> p(k);
    std::iota(p.begin(), p.end(), 0);
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    auto find = [&](std::vector<Index> const& q) {
      return static_cast<Index>(std::lower_bound(perms.begin(), perms.end(), q) - perms.begin());
    };
    std::size_t n = perms.size();
    std::vector<std::vector<Index>> t(n, std::vector<Index>(n));
    std::vector<std::string> labels;
    for (std::size_t x = 0; x < n; ++x) {
      labels.push_back(cycle_notation(perms[x]));
      for (std::size_t y = 0; y < n; ++y) {
        std::vector<Index> c(k);
        for (Index i = 0; i < k; ++i) c[i] = perms[x][perms[y][i]];
        t[x][y] = find(c);
      }
    }
    FiniteGroup g(std::move(t), std::move(labels));
    g.perm_degree_ = k;
    g.perms_ = std::move(perms);
    return g;
  }

  std::size_t order() const noexcept { return table_.size(); }
  Index identity() const noexcept { return identity_; }
  Index mul(Index x, Index y) const { return table_.at(x).at(y); }
  Index inv(Index x) const { return inverse_.at(x); }
  std::vector<std::vector<Index>> const& table() const noexcept { return table_; }
  std::string const& label(Index x) const { return labels_.at(x); }
  std::vector<std::string> const& labels() const noexcept { return labels_; }

  std::optional<Index> find_label(std::string const& s) const {
    for (Index x = 0; x < labels_.size(); ++x)
      if (labels_[x] == s) return x;
    return std::nullopt;
  }

  /// Element of a symmetric group written in cycle notation, e.g. "(12)(34)",
  /// with points 1..k.
  Index parse_permutation(std::string const& text) const {
    if (perm_degree_ == 0) throw InvalidArgument("group is not a symmetric group");
    std::vector<Index> img(perm_degree_);
    std::iota(img.begin(), img.end(), 0);
    std::vector<Index> cycle;
    auto close = [&] {
      for (std::size_t i = 0; i < cycle.size(); ++i)
        img[cycle[i]] = cycle[(i + 1) % cycle.size()];
      cycle.clear();
    };
    // compose cycles right to left
    std::vector<std::vector<Index>> cycles;
    bool open = false;
    for (char ch : text) {
      if (ch == '(') {
        if (open) throw ParseError("nested '(' in permutation");
        open = true;
      } else if (ch == ')') {
        if (!open) throw ParseError("unbalanced ')' in permutation");
        cycles.push_back(cycle);
        cycle.clear();
        open = false;
      } else if (ch >= '1' && ch <= '9') {
        Index pt = static_cast<Index>(ch - '1');
        if (pt >= perm_degree_) throw ParseError("point out of range in permutation");
        cycle.push_back(pt);
      } else if (ch != ' ' && ch != ',') {
        throw ParseError(std::string("bad character in permutation: ") + ch);
      }
    }
    if (open) throw ParseError("unterminated cycle");
    std::vector<Index> acc(perm_degree_);
    std::iota(acc.begin(), acc.end(), 0);
    for (auto it = cycles.rbegin(); it != cycles.rend(); ++it) {
      std::iota(img.begin(), img.end(), 0);
      cycle = *it;
      close();
      std::vector<Index> next(perm_degree_);
      for (Index i = 0; i < perm_degree_; ++i) next[i] = img[acc[i]];
      acc = next;
    }
    return static_cast<Index>(std::lower_bound(perms_.begin(), perms_.end(), acc) - perms_.begin());
  }

  /// Subgroup generated by `gens` (closure under multiplication).
  std::vector<Index> generated_subgroup(std::vector<Index> const& gens) const {
    std::vector<bool> in(order(), false);
    std::vector<Index> out{identity_};
    in[identity_] = true;
    for (std::size_t i = 0; i < out.size(); ++i)
      for (auto g : gens) {
        Index y = mul(g, out[i]);
        if (!in[y]) {
          in[y] = true;
          out.push_back(y);
        }
      }
    std::sort(out.begin(), out.end());
    return out;
  }

  bool operator==(FiniteGroup const& o) const { return table_ == o.table_; }

 private:
  static std::string cycle_notation(std::vector<Index> const& p) {
    std::string out;
    std::vector<bool> done(p.size(), false);
    for (Index i = 0; i < p.size(); ++i) {
      if (done[i] || p[i] == i) continue;
      out += '(';
      for (Index j = i; !done[j]; j = p[j]) {
        done[j] = true;
        out += static_cast<char>('1' + j);
      }
      out += ')';
    }
    return out.empty() ? "()" : out;
  }

  std::vector<std::vector<Index>> table_;
  std::vector<std::string> labels_;
  std::vector<Index> inverse_;
  Index identity_ = 0;
  std::uint32_t perm_degree_ = 0;
  std::vector<std::vector<Index>> perms_;
};

}  // namespace natext
