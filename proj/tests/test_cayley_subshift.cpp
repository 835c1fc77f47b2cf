#include <map>
#include <random>
#include <set>

#include "catch_amalgamated.hpp"
#include "natext/natext.hpp"

using namespace natext;

namespace {

std::mt19937_64& rng() {
  static std::mt19937_64 g(77);
  return g;
}

// Ball of BS(1,2) with a: x -> 2x, b: x -> 2x + 1, by BFS over pairs
// (slope, intercept) of rational affine maps.
std::vector<std::size_t> bs12_ball_sizes(std::size_t r_max) {
  using Map = std::pair<BigRational, BigRational>;
  auto compose = [](Map const& f, Map const& g) { return Map{f.first * g.first, f.first * g.second + f.second}; };
  std::vector<Map> step{{2, 0}, {BigRational(1, 2), 0}, {2, 1}, {BigRational(1, 2), BigRational(-1, 2)}};
  std::set<Map> seen{{1, 0}};
  std::vector<Map> frontier{{1, 0}};
  std::vector<std::size_t> sizes{1};
  for (std::size_t r = 1; r <= r_max; ++r) {
    std::vector<Map> next;
    for (auto const& h : frontier)
      for (auto const& s : step) {
        auto g = compose(s, h);
        if (seen.insert(g).second) next.push_back(g);
      }
    frontier = std::move(next);
    sizes.push_back(seen.size());
  }
  return sizes;
}

SubshiftSpec nn_spec(std::size_t k, std::vector<std::pair<Symbol, Symbol>> const& pairs) {
  SubshiftSpec s = full_shift(SemigroupPresentation::free({"a"}), k);
  s.rule = NearestNeighbor{{Relation::from_pairs(k, pairs)}};
  return s;
}

}  // namespace

TEST_CASE("ball sizes") {
  auto z2 = lattice_in_integers({"x", "y"});
  CHECK(build_ball(z2, 1).size() == 5);
  auto f2 = free_monoid_in_free_group({"a", "b"});
  CHECK(build_ball(f2, 2).size() == 17);
  for (std::size_t r = 0; r <= 4; ++r) CHECK(build_ball(f2, r).size() == 2 * static_cast<std::size_t>(std::pow(3, r)) - 1);

  auto sizes = bs12_ball_sizes(4);
  auto bs = free_monoid_in_bs12();
  for (std::size_t r = 0; r <= 4; ++r) CHECK(build_ball(bs, r).size() == sizes[r]);
  CHECK(sizes[1] == 5);
  CHECK(sizes[2] == 17);
  CHECK(sizes[3] == 47);
  CHECK(sizes[4] == 115);

  SECTION("l1 balls of Z^d") {
    auto z1 = lattice_in_integers({"x"});
    for (std::size_t r = 0; r <= 6; ++r) {
      CHECK(build_ball(z1, r).size() == 2 * r + 1);
      std::size_t l1 = 0;
      auto ir = static_cast<std::int64_t>(r);
      for (std::int64_t i = -ir; i <= ir; ++i)
        for (std::int64_t j = -ir; j <= ir; ++j) l1 += (std::abs(i) + std::abs(j) <= ir);
      CHECK(build_ball(z2, r).size() == l1);
    }
  }
}

TEST_CASE("ball structure") {
  for (auto const& sg : {free_monoid_in_bs12(), lattice_in_integers({"x", "y"}),
                         free_monoid_in_free_group({"a", "b"}), free_s_group_of(bs_positive(2, 3))}) {
    auto ball = build_ball(sg, 3);
    CHECK(is_identity(ball.element(0)));
    std::set<GroupElem> distinct(ball.elements().begin(), ball.elements().end());
    CHECK(distinct.size() == ball.size());
    for (auto const& e : ball.edges()) {
      auto step = e.sign > 0 ? sg.eta[e.gen] : inv(sg.eta[e.gen]);
      CHECK(mul(step, ball.element(e.source)) == ball.element(e.target));
    }
    for (std::size_t i = 1; i < ball.size(); ++i) {
      CHECK(ball.layer(ball.parent(i)) + 1 == ball.layer(i));
      auto w = geodesic_word(ball, i);
      CHECK(w.size() == ball.layer(i));
      CHECK(eta_apply(sg, w) == ball.element(i));
    }
    auto smaller = build_ball(sg, 2);
    for (auto const& g : smaller.elements()) CHECK(ball.locate(g).has_value());
  }
}

TEST_CASE("the six-cycle of the BS(1,2) counterexample lies in the radius-3 ball") {
  auto sg = free_monoid_in_bs12();
  auto ball = build_ball(sg, 3);
  auto const& g = sg.semigroup.generators();
  for (auto w : {"1", "b", "a b", "b^-1 a b", "b a", "a"}) CHECK(ball.locate(eta_apply(sg, parse_signed_word(g, w))));
  // b^-1 a b is x -> 2x + 1/2, reached at distance 3
  auto idx = ball.locate(DyadicAffine{1, Dyadic(1, 1)});
  REQUIRE(idx);
  CHECK(ball.layer(*idx) == 3);
  CHECK(geodesic_word(ball, *idx).size() == 3);

  auto dot = export_dot(ball, g);
  CHECK(dot.rfind("digraph", 0) == 0);
}

TEST_CASE("geodesics and DOT export") {
  auto z2 = lattice_in_integers({"x", "y"});
  auto ball = build_ball(z2, 1);
  CHECK(geodesic_word(ball, 0).empty());
  auto i = ball.locate(IntVector{{0, -1}});
  REQUIRE(i);
  CHECK(format_signed_word(z2.semigroup.generators(), geodesic_word(ball, *i)) == "y^-1");

  auto dot = export_dot(ball, z2.semigroup.generators());
  std::size_t edges = 0;
  for (std::size_t p = dot.find("->"); p != std::string::npos; p = dot.find("->", p + 1)) ++edges;
  CHECK(edges == 8);

  auto single = export_dot(build_ball(z2, 0), z2.semigroup.generators());
  CHECK(single.find("->") == std::string::npos);
  CHECK(single.find("n0") != std::string::npos);
}

TEST_CASE("local admissibility") {
  auto fig1 = fig1_spec();
  CHECK(locally_admissible(fig1, Pattern{{Word{}, Word{0}}, {0, 1}}));
  CHECK_FALSE(locally_admissible(fig1, Pattern{{Word{}, Word{0}}, {0, 2}}));
  CHECK(locally_admissible(fig1, Pattern{}));
  // x(b t) = x(t) - 1
  CHECK(locally_admissible(fig1, Pattern{{Word{}, Word{1}}, {0, 2}}));

  SECTION("hereditary") {
    auto gm = golden_mean();
    std::uniform_int_distribution<int> bit(0, 1);
    for (int trial = 0; trial < 200; ++trial) {
      Pattern p;
      for (Letter n = 0; n < 6; ++n) {
        p.domain.push_back(Word(std::vector<Letter>(n, 0)));
        p.values.push_back(static_cast<Symbol>(bit(rng())));
      }
      if (!locally_admissible(gm, p)) continue;
      for (std::size_t drop = 0; drop < p.size(); ++drop) {
        Pattern q = p;
        q.domain.erase(q.domain.begin() + drop);
        q.values.erase(q.values.begin() + drop);
        CHECK(locally_admissible(gm, q));
      }
    }
  }
}

TEST_CASE("window counts") {
  auto n = SemigroupPresentation::free({"a"});
  CHECK(window_count(full_shift(n, 2), {Word{}, Word{0}, Word{0, 0}}).count == 8);
  BigInt fib[] = {2, 3, 5, 8, 13, 21};
  for (std::size_t k = 1; k <= 6; ++k) CHECK(window_count(golden_mean(), interval(k)).count == fib[k - 1]);
  CHECK(window_count(fig1_spec(), {Word{}, Word{0}, Word{1}}).count == 3);

  SECTION("transfer matrix equals brute force on random N nearest-neighbour specs") {
    std::uniform_int_distribution<std::size_t> alpha(1, 4), len(1, 10);
    std::uniform_int_distribution<int> coin(0, 2);
    for (int trial = 0; trial < 60; ++trial) {
      std::size_t k = alpha(rng());
      std::vector<std::pair<Symbol, Symbol>> pairs;
      std::vector<std::vector<bool>> allowed(k, std::vector<bool>(k, false));
      for (Symbol p = 0; p < k; ++p)
        for (Symbol q = 0; q < k; ++q)
          if (coin(rng()) != 0) {
            pairs.push_back({p, q});
            allowed[p][q] = true;
          }
      auto spec = nn_spec(k, pairs);
      std::size_t L = len(rng());
      auto wc = window_count(spec, interval(L));
      CHECK(wc.method == CountMethod::TransferMatrix);
      // enumerate all k^L words; position i + 1 is the a-translate of i
      std::size_t brute = 0, total = 1;
      for (std::size_t i = 0; i < L; ++i) total *= k;
      for (std::size_t code = 0; code < total; ++code) {
        std::vector<Symbol> x(L);
        std::size_t c = code;
        for (std::size_t i = 0; i < L; ++i, c /= k) x[i] = static_cast<Symbol>(c % k);
        bool ok = true;
        for (std::size_t i = 0; i + 1 < L && ok; ++i) ok = allowed[x[i]][x[i + 1]];
        brute += ok;
      }
      CHECK(wc.count == brute);
      CHECK(window_count(spec, {Word{}, Word{0}, Word{0, 0, 0}}).method == CountMethod::Enumeration);
    }
  }
  SECTION("monotone under window inclusion") {
    auto spec = fig1_spec();
    std::vector<Word> small{Word{}, Word{0}}, large{Word{}, Word{0}, Word{1}, Word{0, 1}};
    auto cs = window_count(spec, small).count, cl = window_count(spec, large).count;
    CHECK(cl <= cs * 9);
    CHECK(cl >= 1);
  }
}

TEST_CASE("coset subshifts") {
  auto f2 = SemigroupPresentation::free({"a", "b"});
  auto z3 = std::make_shared<FiniteGroup const>(FiniteGroup::cyclic(3));
  auto x = coset_subshift(f2, z3, {1, 2});
  CHECK(x.configurations.size() == 3);
  CHECK(check_surjective_finite(x.action()));
  CHECK(check_minimal_finite(x.action()));
  // same subshift as the nearest-neighbour description
  for (std::size_t c = 0; c < 3; ++c) {
    Pattern p;
    for (auto const& w : words_up_to(2, 3)) {
      p.domain.push_back(w);
      p.values.push_back(x.value(c, w));
    }
    CHECK(locally_admissible(fig1_spec(), p));
  }

  auto trivial = coset_subshift(f2, z3, {0, 0});
  CHECK(trivial.configurations.size() == 3);
  CHECK_FALSE(trivial.generates);
  CHECK_FALSE(check_transitive_finite(trivial.action()));

  auto s3 = std::make_shared<FiniteGroup const>(FiniteGroup::symmetric(3));
  auto y = coset_subshift(f2, s3, {s3->parse_permutation("(12)"), s3->parse_permutation("(13)")});
  CHECK(y.configurations.size() == 6);
  CHECK(check_minimal_finite(y.action()));
  CHECK(check_surjective_finite(y.action()));

  // phi must respect relations of S
  auto n2 = parse_presentation("gens: x y; rels: xy = yx;");
  CHECK_THROWS_AS(coset_subshift(n2, s3, {s3->parse_permutation("(12)"), s3->parse_permutation("(13)")}),
                  MorphismInconsistent);
  CHECK_NOTHROW(coset_subshift(n2, z3, {1, 2}));
}

TEST_CASE("finite action dynamics") {
  CHECK_FALSE(check_surjective_finite(FiniteAction{3, {{0, 0, 0}}}));
  CHECK(check_surjective_finite(FiniteAction{1, {{0}}}));
  FiniteAction fixed{2, {{0, 1}}};
  CHECK_FALSE(check_transitive_finite(fixed));
  CHECK_FALSE(check_minimal_finite(fixed));
  FiniteAction absorbing{2, {{0, 0}}};
  CHECK(check_transitive_finite(absorbing));
  CHECK_FALSE(check_minimal_finite(absorbing));
}

TEST_CASE("matrix transitivity") {
  CHECK(check_transitive_matrix(golden_mean()));
  CHECK(check_transitive_matrix(nn_spec(2, {{0, 0}, {0, 1}, {1, 0}})));
  CHECK_FALSE(check_transitive_matrix(nn_spec(2, {{0, 0}, {0, 1}, {1, 1}})));
  CHECK(check_transitive_matrix(full_shift(SemigroupPresentation::free({"a"}), 3)));
  CHECK_THROWS_AS(check_transitive_matrix(fig1_spec()), NotSingleGenerator);
  auto tm = transfer_matrix(golden_mean());
  CHECK(tm.states.size() == 2);
  for (std::size_t n = 1; n <= 12; ++n) CHECK(transfer_count(tm, n) == window_count(golden_mean(), interval(n)).count);
}

TEST_CASE("configuration distance") {
  auto n = SemigroupPresentation::free({"a"});
  auto word = [](std::vector<Symbol> v) {
    Pattern p;
    for (std::size_t i = 0; i < v.size(); ++i) {
      p.domain.push_back(Word(std::vector<Letter>(i, 0)));
      p.values.push_back(v[i]);
    }
    return p;
  };
  std::vector<std::vector<Word>> ex;
  for (std::size_t m = 0; m < 6; ++m) ex.push_back(interval(m + 1));
  auto d = config_distance(n, word({1, 0, 0, 0, 0, 0}), word({1, 0, 0, 1, 0, 0}), ex);
  CHECK(d.index == 3);
  CHECK(d.value == Dyadic(1, -3));
  CHECK_FALSE(d.upper_bound);

  auto first = config_distance(n, word({0, 0}), word({1, 0}), {{Word{}}, interval(2)});
  CHECK(first.value == Dyadic(1));

  auto same = config_distance(n, word({1, 0, 1}), word({1, 0, 1}), {interval(1), interval(2), interval(3)});
  CHECK(same.upper_bound);
  CHECK(same.value == Dyadic(1, -3));
}

TEST_CASE("spec files load and round-trip") {
  std::string dir = NATEXT_DATA_DIR "/specs/";
  auto fig1 = load_spec(dir + "fig1_z3.json");
  CHECK(fig1.kind() == SpecKind::NearestNeighbor);
  auto builtin = fig1_spec();
  CHECK(fig1.as<NearestNeighbor>().rules[0] == builtin.as<NearestNeighbor>().rules[0]);
  CHECK(fig1.as<NearestNeighbor>().rules[1] == builtin.as<NearestNeighbor>().rules[1]);
  for (auto name : {"fig1_z3", "golden_mean", "golden_mean_nn", "coset_s3", "f2_swap", "full_shift_3_n2"}) {
    auto s = load_spec(dir + name + ".json");
    auto again = spec_from_json(spec_to_json(s));
    CHECK(spec_to_json(again) == spec_to_json(s));
  }
  CHECK_THROWS_AS(spec_from_json(Json::parse(R"({"semigroup": "gens: a;", "alphabet": ["0"], "kind": "nope", "data": {}})")),
                  ParseError);
}
