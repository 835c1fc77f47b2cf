#pragma once

// Built-in worked examples.  Each entry runs a full pipeline under the
// default budgets and reports whether every expected verdict was reached.

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <future>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "natext/britton.hpp"
#include "natext/dynamics.hpp"
#include "natext/extension.hpp"
#include "natext/io.hpp"
#include "natext/reversibility.hpp"
#include "natext/subshift.hpp"

namespace natext {

/// Budgets shared by the CLI and the registry.  Each field can be overridden
/// by the environment variable named next to it.
struct RunConfig {
  std::size_t max_radius = 4;     // NATEXT_MAX_RADIUS
  std::size_t free_radius = 5;    // NATEXT_FREE_RADIUS
  std::size_t word_length = 8;    // NATEXT_WORD_LENGTH
  std::size_t entropy_n = 20;     // NATEXT_ENTROPY_N
  std::size_t search_radius = 4;  // NATEXT_SEARCH_RADIUS
  bool log2 = false;

  static RunConfig from_env() {
    RunConfig c;
    auto read = [](char const* var, std::size_t& field) {
      if (char const* v = std::getenv(var)) {
        try {
          std::size_t used = 0;
          long long x = std::stoll(v, &used);
          if (used != std::strlen(v)) throw std::invalid_argument(v);
          if (x < 1) throw InvalidArgument(std::string(var) + " must be >= 1");
          field = static_cast<std::size_t>(x);
        } catch (std::logic_error const&) {
          throw InvalidArgument(std::string(var) + " is not an integer");
        }
      }
    };
    read("NATEXT_MAX_RADIUS", c.max_radius);
    read("NATEXT_FREE_RADIUS", c.free_radius);
    read("NATEXT_WORD_LENGTH", c.word_length);
    read("NATEXT_ENTROPY_N", c.entropy_n);
    read("NATEXT_SEARCH_RADIUS", c.search_radius);
    return c;
  }

  void validate() const {
    if (!max_radius || !free_radius || !word_length || !entropy_n || !search_radius)
      throw InvalidArgument("all budgets must be >= 1");
  }
};

struct ExampleResult {
  Json report;
  bool matched = false;
};

struct ExampleDescriptor {
  std::string name;
  std::string anchor;
  std::string expected;
  std::function<ExampleResult(RunConfig const&)> run;
};

namespace examples {

inline std::shared_ptr<FiniteGroup const> z3() {
  return std::make_shared<FiniteGroup const>(FiniteGroup::cyclic(3));
}
inline std::shared_ptr<FiniteGroup const> s3() {
  return std::make_shared<FiniteGroup const>(FiniteGroup::symmetric(3));
}
inline SemigroupPresentation f2plus() { return SemigroupPresentation::free({"a", "b"}); }

inline CosetSubshift z3_coset() { return coset_subshift(f2plus(), z3(), {1, 2}); }
inline CosetSubshift s3_coset() {
  auto f = s3();
  return coset_subshift(f2plus(), f, {f->parse_permutation("(12)"), f->parse_permutation("(13)")});
}

/// The six vertices {1, b, ab, b^-1 a b, ba, a} of the contradictory cycle.
inline std::set<GroupElem> fig2_cycle(SGroup const& sg) {
  auto const& g = sg.semigroup.generators();
  std::set<GroupElem> out;
  for (auto w : {"1", "b", "a b", "b^-1 a b", "b a", "a"}) out.insert(eta_apply(sg, parse_signed_word(g, w)));
  return out;
}

inline Json obstruction_json(SGroup const& sg, SubshiftSpec const& spec, Obstruction const& o) {
  Json j;
  j["obstructed"] = o.obstructed;
  if (o.relator) {
    j["relator"] = format_signed_word(sg.semigroup.generators(), *o.relator);
    j["image"] = spec.as<CosetRule>().group->label(o.image);
  }
  return j;
}

inline ExampleResult fig1_bs12(RunConfig const& c) {
  auto sg = free_monoid_in_bs12();
  auto spec = fig1_spec();
  auto rep = check_empty(sg, spec, c.max_radius);
  ExampleResult out;
  out.report = report_to_json(sg, spec, rep, false);
  bool cycle = false;
  if (rep.core) {
    auto ball = build_ball(sg, rep.radius);
    std::set<GroupElem> core;
    for (auto i : *rep.core) core.insert(ball.element(i));
    cycle = core == fig2_cycle(sg);
  }
  out.report["core_is_cycle"] = cycle;
  out.matched = rep.verdict == Verdict::EmptyProven && rep.radius <= 3 && cycle;
  return out;
}

inline ExampleResult fig1_free(RunConfig const& c) {
  auto sg = free_monoid_in_free_group({"a", "b"});
  auto spec = fig1_spec();
  auto rep = check_empty(sg, spec, c.free_radius);
  bool verified = false;
  if (rep.witness) verified = ball_violations(make_problem(sg, spec, rep.radius), *rep.witness) == 0;
  ExampleResult out;
  out.report = report_to_json(sg, spec, rep, false);
  out.report["witness_verified"] = verified;
  out.matched = rep.verdict == Verdict::ConsistentUpTo && rep.radius == c.free_radius && verified;
  return out;
}

inline ExampleResult coset_pipeline(CosetSubshift const& cs, RunConfig const& c) {
  auto sg = free_monoid_in_bs12();
  auto o = hom_obstruction(sg, cs.spec);
  auto rep = check_empty(sg, cs.spec, c.max_radius);
  ExampleResult out;
  out.report["configurations"] = cs.configurations.size();
  out.report["surjective"] = check_surjective_finite(cs.action());
  out.report["minimal"] = check_minimal_finite(cs.action());
  out.report["obstruction"] = obstruction_json(sg, cs.spec, o);
  out.report["check_empty"] = report_to_json(sg, cs.spec, rep, false);
  bool const empty = rep.verdict == Verdict::EmptyProven;
  out.report["solver_agrees"] = o.obstructed == empty;
  out.matched = o.obstructed == empty && (empty || rep.certified_nonempty);
  return out;
}

inline ExampleResult coset_z3_bs12(RunConfig const& c) {
  auto cs = z3_coset();
  auto out = coset_pipeline(cs, c);
  out.matched = out.matched && cs.configurations.size() == 3 && check_surjective_finite(cs.action()) &&
                out.report["obstruction"]["obstructed"].get<bool>();
  return out;
}

inline ExampleResult coset_s3_bs12(RunConfig const& c) { return coset_pipeline(s3_coset(), c); }

inline ExampleResult nat_to_int_goldenmean(RunConfig const&) {
  auto sg = lattice_in_integers({"a"});
  auto spec = golden_mean();
  auto surj = check_surjective_up_to(sg, spec, 5, {Word{}, Word{0}, Word{0, 0}});
  Pattern base{{Word{}, Word{0}, Word{0, 0}, Word{0, 0, 0}}, {1, 0, 1, 0}};
  auto point = check_point_extensible(sg, spec, base, 6);
  ExampleResult out;
  out.report["surjective"] = report_to_json(sg, spec, surj, false);
  out.report["point"] = report_to_json(sg, spec, point, true);
  out.matched = surj.verdict == Verdict::SurjectiveUpTo && surj.patterns_checked == 5 &&
                point.verdict == Verdict::PointExtendsUpTo;
  return out;
}

inline ExampleResult golden_entropy(RunConfig const& c) {
  auto rows = entropy_compare(lattice_in_integers({"a"}), golden_mean(), c.entropy_n);
  ExampleResult out;
  Json table = Json::array();
  bool equal_counts = true;
  double max_diff = 0;
  for (auto const& r : rows) {
    equal_counts = equal_counts && r.count_s == r.count_g;
    max_diff = std::max(max_diff, r.difference());
    table.push_back({{"n", r.n}, {"count", r.count_s.str()}, {"h", r.h_s}});
  }
  out.report["rows"] = table;
  out.report["max_difference"] = max_diff;
  out.matched = equal_counts && max_diff == 0;
  return out;
}

inline ExampleResult fractions_test_z2(RunConfig const&) {
  ExampleResult out;
  out.matched = true;
  for (auto const& sg : {lattice_in_integers({"x"}), lattice_in_integers({"x", "y"})}) {
    Json per = Json::array();
    for (std::size_t r = 1; r <= 4; ++r) {
      auto f = check_fractions_by_subshift(sg, r, 2 * r);
      per.push_back({{"r", r}, {"R", f.search}, {"witness", f.witness ? to_string(*f.witness) : "none"}});
      out.matched = out.matched && f.ok();
    }
    out.report[sg.label] = per;
  }
  return out;
}

inline ExampleResult fractions_test_f2(RunConfig const& c) {
  auto sg = free_monoid_in_free_group({"a", "b"});
  auto f = check_fractions_by_subshift(sg, 1, c.search_radius);
  // {a, b} has the lower bound 1; {a^-1, b^-1} has none since aF2+ and bF2+ are disjoint
  auto d = directed_bounded(sg, {inv(sg.eta[0]), inv(sg.eta[1])}, c.search_radius);
  ExampleResult out;
  out.report["fractions"] = {{"verdict", f.ok() ? "AllOnesApproximable" : "FailsAt"}, {"r", f.r}, {"R", f.search}};
  out.report["directed"] = {{"verdict", d.lower_bound ? "LowerBound" : "NoneFound"}, {"radius", d.radius},
                            {"exact", d.exact}};
  out.matched = !f.ok() && !d.lower_bound && d.exact;
  return out;
}

inline ExampleResult reversible_f2plus(RunConfig const& c) {
  auto free = f2plus();
  auto analytic = left_reversible_bounded(free, c.word_length);
  auto model = left_reversible_bounded(free_monoid_in_bs12(), c.word_length);
  auto n2 = SemigroupPresentation::free_commutative({"x", "y"});
  auto lattice = left_reversible_bounded(n2, 1);
  ExampleResult out;
  out.report["free_monoid"] = reversibility_to_json(free.generators(), analytic);
  out.report["bs12_model"] = reversibility_to_json(free.generators(), model);
  out.report["N2"] = reversibility_to_json(n2.generators(), lattice);
  out.matched = analytic.front().verdict == ReversibilityVerdict::DisjointProven &&
                model.front().verdict == ReversibilityVerdict::NoneUpTo &&
                lattice.front().verdict == ReversibilityVerdict::WitnessFound;
  return out;
}

inline ExampleResult grothendieck_n2(RunConfig const&) {
  auto a = grothendieck_group(parse_presentation("gens: x y; rels: xy = yx;"));
  ExampleResult out;
  out.report = abelian_to_json(a);
  out.matched = a.rank == 2 && a.torsion.empty();
  return out;
}

inline ExampleResult bs23_endo(RunConfig const& c) {
  auto S = bs_positive(2, 3);
  auto gens = S.generators();
  auto britton = [](std::initializer_list<SignedLetter> w) { return BrittonForm::from_word(2, 3, SignedWord(w)); };
  SignedLetter const a{0, 1}, A{0, -1}, b{1, 1}, B{1, -1};
  // theta(a) = a, theta(b) = b^2, applied letter by letter
  auto theta = [&](Word const& w) {
    BrittonForm f(2, 3);
    for (auto l : w) {
      if (l == 0) f.push(a);
      else {
        f.push(b);
        f.push(b);
      }
    }
    return f;
  };
  auto affine = [](Word const& w) {
    BigRational q(3, 2);
    RationalAffine f = RationalAffine::identity(q);
    for (auto l : w) f = f * (l == 0 ? RationalAffine{q, 1, 0} : RationalAffine{q, 0, 1});
    return f;
  };
  ExampleResult out;
  bool const ab_ba = !(theta(Word{0, 1}) == theta(Word{1, 0}));
  bool const b_in_image = britton({a, b, b, A, B, B}) == britton({b});
  // [a^-1 b a, b] = (a^-1 b a) b (a^-1 b^-1 a) b^-1 and its theta-image
  auto comm = britton({A, b, a, b, A, B, a, B});
  auto theta_comm = britton({A, b, b, a, b, b, A, B, B, a, B, B});
  // eta = theta o gamma separates every pair of positive words that the
  // faithful affine model of BS(2,3)+ separates
  std::map<std::pair<std::pair<std::int64_t, std::string>, std::string>, BrittonForm> classes;
  bool injective = true;
  std::size_t words = 0;
  std::set<BrittonForm> images;
  for (auto const& w : words_up_to(2, c.word_length)) {
    ++words;
    auto f = affine(w);
    std::ostringstream key;
    key << f.c;
    auto k = std::make_pair(std::make_pair(f.k, std::string()), key.str());
    auto th = theta(w);
    auto [it, fresh] = classes.emplace(k, th);
    if (!fresh && !(it->second == th)) injective = false;  // theta must respect relations
    if (fresh && !images.insert(th).second) injective = false;
  }
  out.report["theta_ab_ne_theta_ba"] = ab_ba;
  out.report["b_equals_a_b2_a-1_b-2"] = b_in_image;
  out.report["commutator_nontrivial"] = !comm.is_identity();
  out.report["theta_kills_commutator"] = theta_comm.is_identity();
  out.report["eta_injective"] = {{"words", words}, {"classes", classes.size()},
                                 {"max_length", c.word_length}, {"holds", injective}};
  out.report["theta_b"] = theta(Word{1}).to_string();
  out.matched = ab_ba && b_in_image && !comm.is_identity() && theta_comm.is_identity() && injective;
  return out;
}

inline ExampleResult transitive_lift_goldenmean(RunConfig const&) {
  auto spec = golden_mean();
  bool const nat = check_transitive_matrix(spec);
  bool const integers = check_transitive_pushforward(lattice_in_integers({"a"}), spec);
  bool const z3min = check_minimal_finite(z3_coset().action());
  bool const s3min = check_minimal_finite(s3_coset().action());
  ExampleResult out;
  out.report = {{"golden_mean_N", nat}, {"golden_mean_Z", integers}, {"z3_coset_minimal", z3min},
                {"s3_coset_minimal", s3min}};
  out.matched = nat && integers && z3min && s3min;
  return out;
}

}  // namespace examples

inline std::vector<ExampleDescriptor> const& example_registry() {
  static std::vector<ExampleDescriptor> const reg{
      {"fig1-bs12", "Z/3 nearest-neighbour subshift on F2+ over BS(1,2): empty extension, six-cycle core",
       "EmptyProven(<=3), core = {1, b, ab, b^-1ab, ba, a}", examples::fig1_bs12},
      {"fig1-free", "same subshift over the free S-group F2", "ConsistentUpTo(5) with verified witness",
       examples::fig1_free},
      {"coset-z3-bs12", "finite coset subshift Z/3, a->1, b->2, over BS(1,2)",
       "|X| = 3, surjective, Obstructed, EmptyProven", examples::coset_z3_bs12},
      {"coset-s3-bs12", "finite coset subshift S3, a->(12), b->(13), over BS(1,2)",
       "obstruction and ball solver agree", examples::coset_s3_bs12},
      {"nat-to-int-goldenmean", "golden mean shift on N extended to Z",
       "SurjectiveUpTo(5) on {0,1,2} (5 words), 1010 extends at radius 6", examples::nat_to_int_goldenmean},
      {"golden-entropy", "entropy of an N-subshift equals that of its Z extension",
       "identical counts, max |h_N - h_Z| = 0 for n <= 20", examples::golden_entropy},
      {"fractions-test-z2", "all-ones configuration approximable: Z in N, Z^2 in N^2",
       "witness for every r <= 4", examples::fractions_test_z2},
      {"fractions-test-f2", "F2+ has no group of right fractions", "FailsAt(1), no lower bound for {a^-1, b^-1}",
       examples::fractions_test_f2},
      {"reversible-f2plus", "aF2+ and bF2+ are disjoint; N^2 is reversible",
       "DisjointProven, NoneUpTo in the BS(1,2) model, N^2 witness at L=1", examples::reversible_f2plus},
      {"grothendieck-n2", "Grothendieck group of N^2", "rank 2, no torsion", examples::grothendieck_n2},
      {"bs23-endo", "endomorphism a->a, b->b^2 of BS(2,3) with injective eta on BS(2,3)+",
       "theta(ab) != theta(ba), b in image, kernel element, eta injective", examples::bs23_endo},
      {"transitive-lift-goldenmean", "transitivity and minimality lift to the extension",
       "golden mean transitive on N and Z; Z/3 and S3 cosets minimal", examples::transitive_lift_goldenmean},
  };
  return reg;
}

inline ExampleDescriptor const& find_example(std::string const& name) {
  for (auto const& e : example_registry())
    if (e.name == name) return e;
  throw UnknownExample("no example named '" + name + "'");
}

inline Json run_example(ExampleDescriptor const& e, RunConfig const& c) {
  Json j;
  j["schema"] = kSchema;
  j["example"] = e.name;
  j["anchor"] = e.anchor;
  j["expected"] = e.expected;
  try {
    auto r = e.run(c);
    j["matched"] = r.matched;
    j["report"] = r.report;
  } catch (Error const& err) {
    j["matched"] = false;
    j["error"] = err.what();
  }
  return j;
}

inline Json run_example(std::string const& name, RunConfig const& c) { return run_example(find_example(name), c); }

/// All examples, dispatched concurrently, reported in registry order.
inline Json run_all_examples(RunConfig const& c) {
  auto const& reg = example_registry();
  std::vector<std::future<Json>> jobs;
  for (auto const& e : reg) jobs.push_back(std::async(std::launch::async, [&e, &c] { return run_example(e, c); }));
  Json out = Json::array();
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

}  // namespace natext
