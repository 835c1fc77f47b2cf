#pragma once

// Word-metric balls of a receiving group, with generator-labelled edges.
// Edges multiply on the left: an edge (u -> v, s, sign) means
// v = eta(s)^sign * u, matching the rule s . x_h = x_{eta(s) h}.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "natext/error.hpp"
#include "natext/group.hpp"

namespace natext {

struct CayleyEdge {
  std::size_t source;
  std::size_t target;
  Letter gen;
  std::int8_t sign;
  friend bool operator==(CayleyEdge const&, CayleyEdge const&) = default;
};

class CayleyBall {
 public:
  static constexpr std::ptrdiff_t kOutside = -1;

  std::size_t radius() const noexcept { return radius_; }
  std::size_t size() const noexcept { return elements_.size(); }
  std::size_t generators() const noexcept { return gens_; }
  std::vector<GroupElem> const& elements() const noexcept { return elements_; }
  GroupElem const& element(std::size_t i) const { return elements_.at(i); }
  std::vector<std::size_t> const& layers() const noexcept { return layer_; }
  std::size_t layer(std::size_t i) const { return layer_.at(i); }
  std::vector<CayleyEdge> const& edges() const noexcept { return edges_; }
  /// Set when Generic-family dedupe hit an Unknown equality verdict.
  bool approximate() const noexcept { return approximate_; }

  /// Index of eta(gen)^sign * element(i), or kOutside.
  std::ptrdiff_t neighbour(std::size_t i, Letter gen, std::int8_t sign) const {
    return next_.at(i * 2 * gens_ + 2 * gen + (sign > 0 ? 0 : 1));
  }

  std::optional<std::size_t> locate(GroupElem const& g) const {
    auto it = index_.find(g);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// BFS parent of a non-identity element and the letter leading to it.
  std::size_t parent(std::size_t i) const { return parent_.at(i); }
  SignedLetter parent_letter(std::size_t i) const { return parent_letter_.at(i); }

  std::size_t layer_size(std::size_t r) const {
    std::size_t c = 0;
    for (auto l : layer_) c += (l == r);
    return c;
  }

 private:
  friend struct CayleyBuilder;

  std::size_t radius_ = 0;
  std::size_t gens_ = 0;
  std::vector<GroupElem> elements_;
  std::vector<std::size_t> layer_;
  std::vector<std::size_t> parent_;
  std::vector<SignedLetter> parent_letter_;
  std::vector<CayleyEdge> edges_;
  std::vector<std::ptrdiff_t> next_;
  std::map<GroupElem, std::size_t> index_;
  bool approximate_ = false;
};

struct BallOptions {
  /// Treat Unknown equality as distinct instead of throwing EqualityUnknown.
  bool allow_approximate = false;
};

struct CayleyBuilder {
  static CayleyBall build(SGroup const& sg, std::size_t radius, BallOptions const& opts) {
    CayleyBall b;
    b.radius_ = radius;
    b.gens_ = sg.rank();
    std::vector<GroupElem> step;  // eta(s)^{+1}, eta(s)^{-1} interleaved
    for (auto const& e : sg.eta) {
      step.push_back(e);
      step.push_back(inv(e));
    }
    bool const exact = sg.group.canonical();

    auto find = [&](GroupElem const& g) -> std::optional<std::size_t> {
      if (auto it = b.index_.find(g); it != b.index_.end()) return it->second;
      if (exact) return std::nullopt;
      for (std::size_t i = 0; i < b.elements_.size(); ++i) {
        auto t = equal(b.elements_[i], g);
        if (t == TriState::Equal) return i;
        if (t == TriState::Unknown) {
          if (!opts.allow_approximate)
            throw EqualityUnknown("cannot decide equality of " + to_string(g) + " and " +
                                  to_string(b.elements_[i]));
          b.approximate_ = true;
        }
      }
      return std::nullopt;
    };

    auto add = [&](GroupElem g, std::size_t layer, std::size_t parent, SignedLetter l) {
      b.index_.emplace(g, b.elements_.size());
      b.elements_.push_back(std::move(g));
      b.layer_.push_back(layer);
      b.parent_.push_back(parent);
      b.parent_letter_.push_back(l);
    };

    add(sg.identity(), 0, 0, {0, 1});
    std::size_t begin = 0;
    for (std::size_t r = 1; r <= radius; ++r) {
      std::size_t end = b.elements_.size();
      for (std::size_t i = begin; i < end; ++i)
        for (Letter s = 0; s < b.gens_; ++s)
          for (int k = 0; k < 2; ++k) {
            GroupElem g = mul(step[2 * s + k], b.elements_[i]);
            if (!find(g)) add(std::move(g), r, i, {s, static_cast<std::int8_t>(k == 0 ? 1 : -1)});
          }
      begin = end;
    }

    b.next_.assign(b.elements_.size() * 2 * b.gens_, CayleyBall::kOutside);
    for (std::size_t i = 0; i < b.elements_.size(); ++i)
      for (Letter s = 0; s < b.gens_; ++s)
        for (int k = 0; k < 2; ++k) {
          auto j = find(mul(step[2 * s + k], b.elements_[i]));
          if (!j) continue;
          std::int8_t sign = k == 0 ? 1 : -1;
          b.next_[i * 2 * b.gens_ + 2 * s + k] = static_cast<std::ptrdiff_t>(*j);
          b.edges_.push_back({i, *j, s, sign});
        }
    return b;
  }
};

/// Ball of radius r around the identity in the Cayley graph of G with respect
/// to eta(generators)^{+-1}.
inline CayleyBall build_ball(SGroup const& sg, std::size_t radius, BallOptions const& opts = {}) {
  return CayleyBuilder::build(sg, radius, opts);
}

/// Word w of length layer(i) whose product (left to right) is element(i).
inline SignedWord geodesic_word(CayleyBall const& ball, std::size_t i) {
  if (i >= ball.size()) throw InvalidArgument("ball index out of range");
  SignedWord w;
  while (i != 0) {
    w.letters.push_back(ball.parent_letter(i));
    i = ball.parent(i);
  }
  return w;  // element = l_1 * (l_2 * (... * 1)), read from the root outward
}

/// Graphviz digraph of the ball.  Nodes are labelled with geodesic words;
/// edges carry the generator name and sign.  `only` restricts to a node subset
/// and `positive_only` drops inverse edges.
inline std::string export_dot(CayleyBall const& ball, GeneratorSet const& gens,
                              std::optional<std::vector<std::size_t>> only = std::nullopt,
                              bool positive_only = false) {
  std::vector<bool> keep(ball.size(), !only.has_value());
  if (only)
    for (auto i : *only) keep.at(i) = true;
  std::ostringstream out;
  out << "digraph cayley {\n";
  for (std::size_t i = 0; i < ball.size(); ++i) {
    if (!keep[i]) continue;
    out << "  n" << i << " [label=\"" << format_signed_word(gens, geodesic_word(ball, i))
        << "\"];\n";
  }
  for (auto const& e : ball.edges()) {
    if (!keep[e.source] || !keep[e.target]) continue;
    if (positive_only && e.sign < 0) continue;
    out << "  n" << e.source << " -> n" << e.target << " [label=\"" << gens.name(e.gen)
        << (e.sign < 0 ? "^-1" : "") << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace natext
