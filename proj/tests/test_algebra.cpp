#include <random>
#include <set>

#include "catch_amalgamated.hpp"
#include "natext/natext.hpp"

using namespace natext;

namespace {

std::mt19937_64& rng() {
  static std::mt19937_64 g(20240611);
  return g;
}

SignedWord random_signed(std::size_t rank, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len), gen(0, rank - 1);
  std::uniform_int_distribution<int> sgn(0, 1);
  SignedWord w;
  for (std::size_t i = len(rng()); i > 0; --i)
    w.letters.push_back({static_cast<Letter>(gen(rng())), static_cast<std::int8_t>(sgn(rng()) ? 1 : -1)});
  return w;
}

// Affine map x -> s x + c over Q, kept independent of the library models.
struct QAffine {
  BigRational s{1}, c{0};
  QAffine operator*(QAffine const& g) const { return {s * g.s, s * g.c + c}; }
  QAffine inverse() const { return {BigRational(1) / s, -c / s}; }
  bool identity() const { return s == 1 && c == 0; }
};

}  // namespace

TEST_CASE("generator sets index their names bijectively") {
  GeneratorSet g({"a", "b", "x1"});
  for (Letter i = 0; i < g.size(); ++i) CHECK(g.index(g.name(i)) == i);
  CHECK_FALSE(g.index("c").has_value());
  CHECK_THROWS_AS(GeneratorSet({"a", "a"}), InvalidArgument);
  CHECK_THROWS_AS(GeneratorSet({"a", ""}), InvalidArgument);
}

TEST_CASE("free reduction") {
  GeneratorSet g({"a", "b"});
  CHECK(free_reduce(parse_signed_word(g, "a a^-1")).empty());
  CHECK(free_reduce(parse_signed_word(g, "b^-1 a a^-1 b")).empty());
  auto w = parse_signed_word(g, "b^-1 a b a^-1 b^-1 a");
  CHECK(free_reduce(w) == w);
  CHECK(free_reduce(w).size() == 6);
  CHECK(is_reduced(w));

  for (int trial = 0; trial < 2000; ++trial) {
    auto v = random_signed(3, 16);
    auto r = free_reduce(v);
    CHECK(free_reduce(r) == r);
    CHECK(r.size() <= v.size());
    CHECK(is_reduced(r));
    CHECK(exponent_sums(r, 3) == exponent_sums(v, 3));
    CHECK((v.size() - r.size()) % 2 == 0);
  }
}

TEST_CASE("presentation text round-trips") {
  auto p = parse_presentation("gens: a b; rels: ab = b b a;");
  CHECK(p.rank() == 2);
  REQUIRE(p.relations().size() == 1);
  CHECK(p.relations()[0].first == Word{0, 1});
  CHECK(p.relations()[0].second == Word{1, 1, 0});
  auto q = parse_presentation(format_presentation(p));
  CHECK(q.relations() == p.relations());
  CHECK_THROWS_AS(parse_presentation("gens: a; rels: a = c;"), ParseError);
  CHECK_THROWS_AS(parse_presentation("rels: a = a;"), ParseError);
}

TEST_CASE("bounded word equality") {
  auto n2 = parse_presentation("gens: x y; rels: xy = yx;");
  auto const& g2 = n2.generators();
  CHECK(words_equal_bounded(n2, parse_word(g2, "xyx"), parse_word(g2, "xxy"), 100) == TriState::Equal);
  CHECK(words_equal_bounded(n2, parse_word(g2, "xyx"), parse_word(g2, "xyy"), 100) == TriState::NotEqualProven);

  auto f2 = SemigroupPresentation::free({"a", "b"});
  CHECK(words_equal_bounded(f2, Word{0, 1}, Word{1, 0}, 10) == TriState::NotEqualProven);

  // a b = b^2 a, so a b b = b^4 a; both sides have the affine image x -> 2x + 4
  auto bs = bs_positive(1, 2);
  auto const& g = bs.generators();
  CHECK(words_equal_bounded(bs, parse_word(g, "a b b"), parse_word(g, "b b b b a"), 1000) == TriState::Equal);

  SECTION("symmetric and reflexive") {
    for (auto const& u : words_up_to(2, 4)) {
      CHECK(words_equal_bounded(bs, u, u, 1) == TriState::Equal);
      for (auto const& v : words_of_length(2, 3))
        CHECK(words_equal_bounded(bs, u, v, 200) == words_equal_bounded(bs, v, u, 200));
    }
  }
  SECTION("abelianization separation is sound") {
    // b a b^-1 never equals a positive word with a different letter count
    for (auto const& u : words_up_to(2, 4))
      for (auto const& v : words_up_to(2, 4))
        if (letter_counts(u, 2)[0] != letter_counts(v, 2)[0])
          CHECK(words_equal_bounded(bs, u, v, 200) != TriState::Equal);
  }
}

TEST_CASE("Smith normal form") {
  Matrix<BigInt> a(3, 3);
  std::int64_t vals[3][3] = {{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a(i, j) = vals[i][j];
  auto s = smith_normal_form(a);
  CHECK(s.left * a * s.right == s.diagonal);
  // hand computation: invariant factors 2, 6, 12
  REQUIRE(s.invariants.size() == 3);
  CHECK(s.invariants[0] == 2);
  CHECK(s.invariants[1] == 6);
  CHECK(s.invariants[2] == 12);

  std::uniform_int_distribution<int> entry(-9, 9), dim(1, 4);
  for (int trial = 0; trial < 300; ++trial) {
    Matrix<BigInt> m(dim(rng()), dim(rng()));
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = entry(rng());
    auto f = smith_normal_form(m);
    CHECK(f.left * m * f.right == f.diagonal);
    for (std::size_t i = 0; i + 1 < f.invariants.size(); ++i) {
      CHECK(f.invariants[i] > 0);
      CHECK(f.invariants[i + 1] % f.invariants[i] == 0);
    }
  }
}

TEST_CASE("Grothendieck groups") {
  for (std::size_t d = 1; d <= 3; ++d) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < d; ++i) names.push_back(std::string(1, static_cast<char>('x' + i)));
    auto a = grothendieck_group(SemigroupPresentation::free_commutative(names));
    CHECK(a.rank == d);
    CHECK(a.torsion.empty());
  }
  // relation vectors (2,-2) and (0,0): SNF diag(2, 0) -> Z + Z/2
  auto t = grothendieck_group(parse_presentation("gens: x y; rels: xx = yy; xy = yx;"));
  CHECK(t.rank == 1);
  REQUIRE(t.torsion.size() == 1);
  CHECK(t.torsion[0] == 2);

  auto swapped = grothendieck_group(parse_presentation("gens: x y; rels: yx = xy; yy = xx;"));
  CHECK(swapped.rank == t.rank);
  CHECK(swapped.torsion == t.torsion);

  CHECK(grothendieck_group(parse_presentation("gens: x; rels: ;")).rank == 1);
  CHECK_THROWS_AS(grothendieck_group(parse_presentation("gens: x y; rels: xx = yy;")), NotDeclaredCommutative);
  auto declared = grothendieck_group(parse_presentation("gens: x y; rels: xxx = yy; commutative;"));
  CHECK(declared.rank == 1);
  CHECK(declared.torsion.empty());
}

TEST_CASE("dyadic affine arithmetic") {
  DyadicAffine a{1, 0}, b{1, 1};
  auto ab = a * b;
  CHECK(ab.k == 2);
  CHECK(ab.c == Dyadic(2));
  // b^-1 a b a^-1 b^-1 a = 1
  auto r = b.inverse() * a * b * a.inverse() * b.inverse() * a;
  CHECK(r.is_identity());

  std::uniform_int_distribution<int> k(-4, 4), num(-20, 20);
  auto rnd = [&] { return DyadicAffine{k(rng()), Dyadic(num(rng()), k(rng()) + 4)}; };
  for (int trial = 0; trial < 500; ++trial) {
    auto f = rnd(), g = rnd(), h = rnd();
    CHECK((f * g) * h == f * (g * h));
    CHECK((f * f.inverse()).is_identity());
    auto fg = f * g;
    CHECK(fg.k == f.k + g.k);
    CHECK(fg.c == g.c.scaled(f.k) + f.c);
  }
}

TEST_CASE("Britton normal forms") {
  auto bs12 = [](std::string const& w) {
    GeneratorSet g({"a", "b"});
    return BrittonForm::from_word(1, 2, parse_signed_word(g, w));
  };
  CHECK(bs12("a a^-1").is_identity());
  CHECK(bs12("a b a^-1 b^-1 b^-1").is_identity());
  // b^-1 a b a^-1 b^-1 a with a = t, b = u t
  GeneratorSet tu({"t", "u"});
  auto ab_relator = parse_signed_word(tu, "t^-1 u^-1 t u t t^-1 t^-1 u^-1 t");
  CHECK(BrittonForm::from_word(1, 2, ab_relator).is_identity());

  GeneratorSet g({"a", "b"});
  auto theta = [&](std::string const& w) {
    SignedWord out;
    for (auto l : parse_signed_word(g, w)) {
      out.letters.push_back(l);
      if (l.gen == 1) out.letters.push_back(l);
    }
    return BrittonForm::from_word(2, 3, out);
  };
  CHECK_FALSE(theta("a b") == theta("b a"));
  CHECK(theta("b").to_word() == parse_signed_word(g, "b b"));

  SECTION("agrees with an independent affine model of BS(1,2)") {
    QAffine t{2, 0}, u{1, 1};
    for (int trial = 0; trial < 3000; ++trial) {
      auto w = random_signed(2, 12);
      QAffine f;
      for (auto l : w) {
        QAffine x = l.gen == 0 ? t : u;
        f = f * (l.sign > 0 ? x : x.inverse());
      }
      CHECK(BrittonForm::from_word(1, 2, w).is_identity() == f.identity());
    }
  }
  SECTION("group axioms") {
    for (int trial = 0; trial < 300; ++trial) {
      auto x = BrittonForm::from_word(2, 3, random_signed(2, 8));
      auto y = BrittonForm::from_word(2, 3, random_signed(2, 8));
      auto z = BrittonForm::from_word(2, 3, random_signed(2, 8));
      CHECK((x * y) * z == x * (y * z));
      CHECK((x * x.inverse()).is_identity());
      CHECK(BrittonForm::from_word(2, 3, x.to_word()) == x);
    }
  }
}

TEST_CASE("finite groups") {
  auto z3 = FiniteGroup::cyclic(3);
  CHECK(z3.order() == 3);
  CHECK(z3.mul(1, 2) == z3.identity());
  auto s3 = FiniteGroup::symmetric(3);
  CHECK(s3.order() == 6);
  auto p12 = s3.parse_permutation("(12)"), p13 = s3.parse_permutation("(13)");
  CHECK(s3.mul(p12, p12) == s3.identity());
  CHECK(s3.generated_subgroup({p12, p13}).size() == 6);
  // composition as functions: (12)(13) sends 1 -> 3 -> 3? apply (13) first: 1->3, then (12): 3->3
  CHECK(s3.mul(p12, p13) == s3.parse_permutation("(132)"));
  for (FiniteGroup::Index x = 0; x < s3.order(); ++x) CHECK(s3.mul(x, s3.inv(x)) == s3.identity());
  CHECK_THROWS_AS(FiniteGroup({{0, 1}, {0, 1}}), InvalidArgument);
  CHECK_THROWS_AS(s3.parse_permutation("(14)"), Error);
}

TEST_CASE("group elements across families") {
  auto z2 = lattice_in_integers({"x", "y"});
  CHECK(mul(z2.eta[0], z2.eta[1]) == GroupElem(IntVector{{1, 1}}));
  CHECK(eta_apply(z2, parse_word(z2.semigroup.generators(), "xxyyy")) == GroupElem(IntVector{{2, 3}}));

  auto bs = free_monoid_in_bs12();
  auto ab = eta_apply(bs, Word{0, 1}).as<DyadicAffine>();
  CHECK(ab.k == 2);
  CHECK(ab.c == Dyadic(2));

  auto f2 = free_monoid_in_free_group({"a", "b"});
  CHECK(eta_apply(f2, Word{0, 1}).as<FreeElem>().word == SignedWord{{0, 1}, {1, 1}});
  auto rel = eta_apply(f2, parse_signed_word(f2.semigroup.generators(), "b^-1 a b a^-1 b^-1 a"));
  CHECK_FALSE(is_identity(rel));
  CHECK(rel.as<FreeElem>().word.size() == 6);

  CHECK_THROWS_AS(mul(z2.eta[0], bs.eta[0]), FamilyMismatch);

  SECTION("group axioms on random elements") {
    std::vector<SGroup> groups{z2, bs, f2, free_s_group_of(bs_positive(2, 3))};
    for (auto const& sg : groups) {
      auto rnd = [&] { return eta_apply(sg, random_signed(sg.rank(), 6)); };
      for (int trial = 0; trial < 100; ++trial) {
        auto x = rnd(), y = rnd(), z = rnd();
        CHECK(mul(mul(x, y), z) == mul(x, mul(y, z)));
        CHECK(is_identity(mul(x, inv(x))));
        CHECK(mul(x, sg.identity()) == x);
      }
    }
  }
  SECTION("eta is a morphism") {
    for (auto const& sg : {z2, bs, f2})
      for (auto const& u : words_up_to(sg.rank(), 3))
        for (auto const& v : words_up_to(sg.rank(), 3))
          CHECK(eta_apply(sg, u * v) == mul(eta_apply(sg, u), eta_apply(sg, v)));
  }
}

TEST_CASE("free S-groups pick the matching engine") {
  CHECK(free_s_group_of(SemigroupPresentation::free({"a", "b"})).group.kind == FamilyKind::Free);
  CHECK(free_s_group_of(parse_presentation("gens: x y; rels: xy = yx;")).group.kind == FamilyKind::Abelian);
  auto bs = free_s_group_of(parse_presentation("gens: a b; rels: a b = b b a;"));
  CHECK(bs.group.kind == FamilyKind::Dyadic);
  CHECK(free_s_group_of(bs_positive(2, 3)).group.kind == FamilyKind::Britton);
  auto other = free_s_group_of(parse_presentation("gens: a b; rels: aab = bba;"));
  CHECK(other.group.kind == FamilyKind::Generic);
  CHECK(other.relators.has_value());
}

TEST_CASE("eta is injective on short words of every built-in S-group") {
  auto check_free = [](SGroup const& sg) {
    std::set<GroupElem> seen;
    auto words = words_up_to(sg.rank(), 8);
    for (auto const& w : words) seen.insert(eta_apply(sg, w));
    return seen.size() == words.size();
  };
  CHECK(check_free(free_monoid_in_bs12()));
  CHECK(check_free(free_monoid_in_free_group({"a", "b"})));

  // N^2: distinct normal forms have distinct images
  auto z2 = lattice_in_integers({"x", "y"});
  std::set<Word> nfs;
  std::set<GroupElem> imgs;
  for (auto const& w : words_up_to(2, 8)) {
    nfs.insert(normal_form(z2.semigroup, w));
    imgs.insert(eta_apply(z2, w));
  }
  CHECK(nfs.size() == imgs.size());

  // BS(2,3)+: the rational affine model separates semigroup elements
  auto bs23 = free_s_group_of(bs_positive(2, 3));
  std::map<std::pair<std::int64_t, BigRational>, GroupElem> cls;
  bool ok = true;
  for (auto const& w : words_up_to(2, 8)) {
    QAffine f;
    for (auto l : w) f = f * (l == 0 ? QAffine{BigRational(3, 2), 0} : QAffine{1, 1});
    std::int64_t k = 0;
    for (auto l : w) k += (l == 0);
    auto img = eta_apply(bs23, w);
    auto [it, fresh] = cls.emplace(std::make_pair(k, f.c), img);
    if (!fresh) ok = ok && it->second == img;
  }
  std::set<GroupElem> distinct;
  for (auto const& [key, img] : cls) distinct.insert(img);
  CHECK(ok);
  CHECK(distinct.size() == cls.size());
}

TEST_CASE("endomorphisms") {
  auto bs23 = GroupFamily::baumslag_solitar(2, 3);
  auto gens = bs23.standard_generators();
  std::vector<GroupElem> theta{gens[0], mul(gens[1], gens[1])};
  CHECK(endomorphism_apply(theta, gens[1]) == mul(gens[1], gens[1]));
  for (auto const& g : {gens[0], gens[1], mul(gens[0], inv(gens[1]))})
    CHECK(endomorphism_apply(gens, g) == g);

  auto f = std::make_shared<FiniteGroup const>(FiniteGroup::cyclic(3));
  std::vector<GroupElem> phi{FiniteElem{f, 1}, FiniteElem{f, 2}};
  GeneratorSet g({"a", "b"});
  auto rel = GroupElem(FreeElem{2, parse_signed_word(g, "b^-1 a b a^-1 b^-1 a")});
  CHECK(endomorphism_apply(phi, rel).as<FiniteElem>().index == 2);
}

TEST_CASE("generic family defers to bounded search") {
  auto p = parse_presentation("gens: a b; rels: aab = bba;");
  auto sg = generic_s_group_of(p, 5000);
  CHECK(is_identity(eta_apply(sg, (*sg.relators)[0])));
  auto a = sg.eta[0];
  CHECK(equal(mul(a, inv(a)), sg.identity()) == TriState::Equal);
}
