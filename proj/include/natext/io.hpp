#pragma once

// JSON formats.
//
// Spec file:
//   { "semigroup": "gens: a b;",
//     "alphabet": ["0", "1", "2"],
//     "kind": "nearest_neighbor" | "forbidden" | "coset",
//     "data": ... }
// with data
//   nearest_neighbor: { "rules": { "<gen>": [["q", "q'"], ...] } }   allowed pairs
//   forbidden:        { "patterns": [ [["<word>", "q"], ...], ... ] }
//   coset:            { "group": "cyclic:3" | "symmetric:3" | {"table": ..., "labels": ...},
//                       "phi": { "<gen>": "<element label>" } }
// For coset specs the alphabet is taken from the group and may be omitted.
//
// Every report carries "schema": 1 and the bounds it was computed under.

#include <fstream>
#include <memory>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "natext/cayley.hpp"
#include "natext/error.hpp"
#include "natext/extension.hpp"
#include "natext/finite_group.hpp"
#include "natext/group.hpp"
#include "natext/reversibility.hpp"
#include "natext/subshift.hpp"

namespace natext {

using Json = nlohmann::ordered_json;

inline constexpr int kSchema = 1;

inline Json read_json_file(std::string const& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (nlohmann::json::exception const& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline std::shared_ptr<FiniteGroup const> finite_group_from_json(Json const& j) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    auto colon = s.find(':');
    if (colon == std::string::npos) throw ParseError("group must be cyclic:<n> or symmetric:<k>");
    auto kind = s.substr(0, colon);
    int n = 0;
    try {
      n = std::stoi(s.substr(colon + 1));
    } catch (std::exception const&) {
      throw ParseError("bad group order in '" + s + "'");
    }
    if (n < 1 || n > 64) throw ParseError("group parameter out of range in '" + s + "'");
    if (kind == "cyclic") return std::make_shared<FiniteGroup const>(FiniteGroup::cyclic(n));
    if (kind == "symmetric") {
      if (n > 4) throw ParseError("symmetric groups above S4 exceed the 64-symbol alphabet");
      return std::make_shared<FiniteGroup const>(FiniteGroup::symmetric(n));
    }
    throw ParseError("unknown group kind '" + kind + "'");
  }
  if (!j.is_object() || !j.contains("table")) throw ParseError("finite group needs a table");
  auto table = j.at("table").get<std::vector<std::vector<FiniteGroup::Index>>>();
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
  return std::make_shared<FiniteGroup const>(FiniteGroup(std::move(table), std::move(labels)));
}

namespace detail {
inline Symbol symbol_index(std::vector<std::string> const& alphabet, std::string const& s) {
  for (std::size_t i = 0; i < alphabet.size(); ++i)
    if (alphabet[i] == s) return static_cast<Symbol>(i);
  throw ParseError("symbol '" + s + "' not in alphabet");
}

inline FiniteGroup::Index group_element(FiniteGroup const& f, std::string const& s) {
  if (auto i = f.find_label(s)) return *i;
  try {
    return f.parse_permutation(s);
  } catch (Error const&) {
    throw ParseError("unknown group element '" + s + "'");
  }
}
}  // namespace detail

inline Pattern pattern_from_json(SemigroupPresentation const& p, std::vector<std::string> const& alphabet,
                                 Json const& cells) {
  Pattern out;
  for (auto const& c : cells) {
    if (!c.is_array() || c.size() != 2) throw ParseError("pattern cell must be [word, symbol]");
    out.domain.push_back(parse_word(p.generators(), c[0].get<std::string>()));
    out.values.push_back(detail::symbol_index(alphabet, c[1].get<std::string>()));
  }
  return out;
}

inline Json pattern_to_json(SubshiftSpec const& spec, Pattern const& x) {
  Json cells = Json::array();
  for (std::size_t i = 0; i < x.size(); ++i)
    cells.push_back({format_word(spec.semigroup.generators(), x.domain[i]), spec.alphabet.at(x.values[i])});
  return cells;
}

inline SubshiftSpec spec_from_json(Json const& j) {
  SubshiftSpec spec;
  try {
    spec.semigroup = parse_presentation(j.at("semigroup").get<std::string>());
    auto kind = j.at("kind").get<std::string>();
    auto const& data = j.at("data");
    auto const& gens = spec.semigroup.generators();
    if (kind == "coset") {
      auto f = finite_group_from_json(data.at("group"));
      std::vector<FiniteGroup::Index> phi;
      for (auto const& name : gens.names())
        phi.push_back(detail::group_element(*f, data.at("phi").at(name).get<std::string>()));
      spec.alphabet = f->labels();
      spec.rule = CosetRule{f, phi};
    } else {
      spec.alphabet = j.at("alphabet").get<std::vector<std::string>>();
      if (kind == "nearest_neighbor") {
        NearestNeighbor nn;
        for (auto const& name : gens.names()) {
          Relation r(spec.alphabet.size());
          for (auto const& pair : data.at("rules").at(name))
            r.set(detail::symbol_index(spec.alphabet, pair.at(0).get<std::string>()),
                  detail::symbol_index(spec.alphabet, pair.at(1).get<std::string>()));
          nn.rules.push_back(std::move(r));
        }
        spec.rule = std::move(nn);
      } else if (kind == "forbidden") {
        ForbiddenPatterns fp;
        for (auto const& cells : data.at("patterns"))
          fp.patterns.push_back(pattern_from_json(spec.semigroup, spec.alphabet, cells));
        spec.rule = std::move(fp);
      } else {
        throw ParseError("unknown spec kind '" + kind + "'");
      }
    }
  } catch (nlohmann::json::exception const& e) {
    throw ParseError(std::string("spec: ") + e.what());
  }
  validate(spec);
  return spec;
}

inline SubshiftSpec load_spec(std::string const& path) { return spec_from_json(read_json_file(path)); }

inline Json spec_to_json(SubshiftSpec const& spec) {
  Json j;
  j["semigroup"] = format_presentation(spec.semigroup);
  j["alphabet"] = spec.alphabet;
  j["kind"] = to_string(spec.kind());
  auto const& gens = spec.semigroup.generators();
  Json data = Json::object();
  std::visit(
      [&](auto const& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, ForbiddenPatterns>) {
          data["patterns"] = Json::array();
          for (auto const& p : r.patterns) data["patterns"].push_back(pattern_to_json(spec, p));
        } else if constexpr (std::is_same_v<T, NearestNeighbor>) {
          for (Letter s = 0; s < r.rules.size(); ++s) {
            Json pairs = Json::array();
            for (Symbol q = 0; q < spec.alphabet.size(); ++q)
              for (Symbol q2 = 0; q2 < spec.alphabet.size(); ++q2)
                if (r.rules[s](q, q2)) pairs.push_back({spec.alphabet[q], spec.alphabet[q2]});
            data["rules"][gens.name(s)] = pairs;
          }
        } else {
          data["group"] = {{"table", r.group->table()}, {"labels", r.group->labels()}};
          for (Letter s = 0; s < r.phi.size(); ++s) data["phi"][gens.name(s)] = r.group->label(r.phi[s]);
        }
      },
      spec.rule);
  j["data"] = data;
  return j;
}

// --- receiving groups by name ---

/// `Z^d`, `F_n`, `BS(m,n)`, `free`, `generic`, `finite:<file>`.
///
/// `BS(1,2)` over a free two-generator semigroup uses a: x -> 2x,
/// b: x -> 2x + 1; over a presentation x y^m = y^n x it is the free S-group.
/// The finite file holds {"table", "labels", "eta": {gen: label}}.
inline SGroup sgroup_from_name(std::string const& name, SemigroupPresentation const& s) {
  auto const& names = s.generators().names();
  static std::regex const zd(R"(Z\^(\d+))"), fn(R"(F_(\d+))"), bs(R"(BS\((\d+),(\d+)\))");
  std::smatch m;
  auto need_rank = [&](std::size_t d) {
    if (s.rank() != d)
      throw InvalidArgument("group '" + name + "' needs " + std::to_string(d) + " semigroup generators");
  };
  SGroup sg;
  if (std::regex_match(name, m, zd)) {
    need_rank(std::stoul(m[1]));
    if (!(s.is_free() && s.rank() == 1) && !(has_exact_normal_form(s) && s.is_commutative()))
      throw InvalidArgument("Z^d receives only N^d");
    sg = lattice_in_integers(names);
    sg.semigroup = s;
  } else if (std::regex_match(name, m, fn)) {
    need_rank(std::stoul(m[1]));
    if (!s.is_free()) throw InvalidArgument("F_n receives only the free monoid");
    sg = free_monoid_in_free_group(names);
  } else if (std::regex_match(name, m, bs)) {
    auto bm = std::stoll(m[1]), bn = std::stoll(m[2]);
    need_rank(2);
    if (s.is_free() && bm == 1 && bn == 2) {
      sg = free_monoid_in_bs12(names);
    } else {
      auto match = detail::match_bs(s);
      if (!match || match->m != bm || match->n != bn)
        throw InvalidArgument("semigroup is not BS(" + m[1].str() + "," + m[2].str() + ")+");
      sg = free_s_group_of(s);
    }
  } else if (name == "free") {
    sg = free_s_group_of(s);
  } else if (name == "generic") {
    sg = generic_s_group_of(s);
  } else if (name.rfind("finite:", 0) == 0) {
    auto j = read_json_file(name.substr(7));
    auto f = finite_group_from_json(j);
    sg.semigroup = s;
    sg.group = GroupFamily::finite_group(f);
    for (auto const& g : names)
      sg.eta.emplace_back(FiniteElem{f, detail::group_element(*f, j.at("eta").at(g).get<std::string>())});
    sg.label = "finite(order " + std::to_string(f->order()) + ")";
  } else {
    throw InvalidArgument("unknown group '" + name + "'");
  }
  validate_sgroup(sg);
  return sg;
}

// --- reports ---

inline Json report_to_json(SGroup const& sg, SubshiftSpec const& spec, ExtensionReport const& r,
                           bool include_witness = true) {
  Json j;
  j["schema"] = kSchema;
  j["group"] = sg.group.name();
  j["sgroup"] = sg.label;
  j["verdict"] = to_string(r.verdict);
  j["radius"] = r.radius;
  j["ball_size"] = r.ball_size;
  j["certified_nonempty"] = r.certified_nonempty;
  if (r.core) {
    j["core"]["size"] = r.core->size();
    j["core"]["cells"] = *r.core;
    j["core"]["words"] = r.core_words;
  }
  if (r.base) j["base"] = pattern_to_json(spec, *r.base);
  if (r.patterns_checked) {
    j["patterns_checked"] = r.patterns_checked;
    Json f = Json::array();
    for (auto const& x : r.failures) f.push_back(pattern_to_json(spec, x));
    j["failures"] = f;
  }
  if (include_witness && r.witness) {
    Json w = Json::array();
    for (auto v : *r.witness) w.push_back(spec.alphabet.at(v));
    j["witness"] = w;
  }
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

inline Json ball_to_json(CayleyBall const& ball, GeneratorSet const& gens) {
  Json j;
  j["schema"] = kSchema;
  j["radius"] = ball.radius();
  j["size"] = ball.size();
  j["layers"] = ball.layers();
  Json words = Json::array();
  for (std::size_t i = 0; i < ball.size(); ++i) words.push_back(format_signed_word(gens, geodesic_word(ball, i)));
  j["words"] = words;
  Json edges = Json::array();
  for (auto const& e : ball.edges()) edges.push_back({e.source, e.target, gens.name(e.gen), e.sign});
  j["edges"] = edges;
  return j;
}

inline Json abelian_to_json(AbelianStructure const& a) {
  Json t = Json::array();
  for (auto const& x : a.torsion) t.push_back(x.str());
  return {{"rank", a.rank}, {"torsion", t}};
}

inline Json reversibility_to_json(GeneratorSet const& g, std::vector<ReversibilityReport> const& rs) {
  Json out = Json::array();
  for (auto const& r : rs) {
    Json j;
    j["pair"] = {g.name(r.s), g.name(r.t)};
    j["verdict"] = to_string(r.verdict);
    j["bound"] = r.bound;
    if (r.x) j["x"] = format_word(g, *r.x);
    if (r.y) j["y"] = format_word(g, *r.y);
    out.push_back(j);
  }
  return out;
}

}  // namespace natext
