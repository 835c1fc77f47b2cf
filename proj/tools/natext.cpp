// natext command-line driver.  Every subcommand prints one JSON document
// (schema 1) on stdout, except `entropy --format csv` and `export-dot`.
// Exit codes: 0 success, 1 verdict mismatch in `examples`, 2 error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "natext/natext.hpp"

using namespace natext;

namespace {

void write_to(std::string const& path, std::string const& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  out << text;
}

void print(Json const& j) { std::cout << j.dump(2) << "\n"; }

SemigroupPresentation presentation_arg(std::string const& pres, std::string const& spec_path) {
  if (!pres.empty()) return parse_presentation(pres);
  if (!spec_path.empty()) return load_spec(spec_path).semigroup;
  throw InvalidArgument("give --pres or --spec");
}

Json fractions_to_json(FractionsResult const& f) {
  Json j{{"r", f.r}, {"R", f.search}, {"verdict", f.ok() ? "AllOnesApproximable" : "FailsAt"}};
  if (f.witness) j["witness"] = to_string(*f.witness);
  return j;
}

std::string csv_number(double x) {
  std::ostringstream s;
  s.precision(12);
  s << x;
  return s.str();
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  try {
    cfg = RunConfig::from_env();
  } catch (Error const& e) {
    std::cerr << "natext: " << e.what() << "\n";
    return 2;
  }

  CLI::App app{"natural extensions of semigroup actions: bounded decision procedures"};
  app.require_subcommand(1);

  // extend
  std::string spec_path, group = "free", base_json, dot_core, window_text;
  std::size_t radius = 3;
  bool no_witness = false;
  auto* extend = app.add_subcommand("extend", "solve the extension problem on a ball");
  extend->add_option("--spec", spec_path, "spec JSON file")->required();
  extend->add_option("--group", group, "receiving group: Z^d, F_n, BS(m,n), free, generic, finite:<file>");
  extend->add_option("--radius", radius, "ball radius")->check(CLI::PositiveNumber);
  extend->add_option("--base", base_json, "point pattern to extend, JSON [[word, symbol], ...]");
  extend->add_option("--surjective-window", window_text,
                     "check every admissible pattern on these words, e.g. \"1 a aa\"");
  extend->add_option("--dot-core", dot_core, "write the contradiction core as DOT");
  extend->add_flag("--no-witness", no_witness, "omit the ball colouring");

  // check-empty
  std::size_t max_radius = cfg.max_radius;
  auto* empty = app.add_subcommand("check-empty", "search for an emptiness proof up to a radius");
  empty->add_option("--spec", spec_path, "spec JSON file")->required();
  empty->add_option("--group", group, "receiving group");
  empty->add_option("--max-radius", max_radius, "largest radius tried")->check(CLI::PositiveNumber);
  empty->add_option("--dot-core", dot_core, "write the contradiction core as DOT");
  empty->add_flag("--no-witness", no_witness, "omit the ball colouring");

  // reversible
  std::string pres;
  std::size_t length = cfg.word_length;
  auto* rev = app.add_subcommand("reversible", "bounded left-reversibility search per generator pair");
  rev->add_option("--pres", pres, "semigroup presentation, e.g. \"gens: a b;\"");
  rev->add_option("--spec", spec_path, "take the semigroup from a spec file");
  rev->add_option("--group", group, "compare images in this receiving group instead of rewriting");
  rev->add_option("-L,--length", length, "word length bound")->check(CLI::PositiveNumber);

  // fractions-test
  std::size_t window_r = 4, search_r = 0;
  auto* frac = app.add_subcommand("fractions-test", "is the all-ones point in the orbit closure of x*");
  frac->add_option("--pres", pres, "semigroup presentation");
  frac->add_option("--spec", spec_path, "take the semigroup from a spec file");
  frac->add_option("--group", group, "receiving group")->required();
  frac->add_option("--r", window_r, "test radii 1..r")->check(CLI::PositiveNumber);
  frac->add_option("--search", search_r, "search radius (default 2r)");

  // grothendieck
  auto* groth = app.add_subcommand("grothendieck", "Grothendieck group of a commutative presentation");
  groth->add_option("--pres", pres, "semigroup presentation")->required();

  // entropy
  std::size_t n_max = cfg.entropy_n;
  std::string format = "json", csv_path;
  bool log2 = cfg.log2;
  auto* ent = app.add_subcommand("entropy", "cylinder-cover entropy estimates on Folner boxes");
  ent->add_option("--spec", spec_path, "spec JSON file")->required();
  ent->add_option("--group", group, "also count the extension in this group (Z^d)");
  ent->add_option("--n-max", n_max, "largest window index")->check(CLI::PositiveNumber);
  ent->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  ent->add_option("--csv", csv_path, "also write the CSV table here");
  ent->add_flag("--log2", log2, "report estimates in bits");

  // examples
  auto* ex = app.add_subcommand("examples", "built-in worked examples");
  ex->require_subcommand(1);
  auto* ex_list = ex->add_subcommand("list", "names, anchors and expected verdicts");
  std::string ex_name;
  auto* ex_run = ex->add_subcommand("run", "run one example");
  ex_run->add_option("name", ex_name, "example name")->required();
  auto* ex_all = ex->add_subcommand("run-all", "run every example");

  // export-dot
  std::string out_path;
  bool positive_only = false, dot_json = false;
  std::size_t dot_radius = 2;
  auto* dot = app.add_subcommand("export-dot", "Cayley ball as a Graphviz digraph");
  dot->add_option("--pres", pres, "semigroup presentation");
  dot->add_option("--spec", spec_path, "take the semigroup from a spec file");
  dot->add_option("--group", group, "receiving group");
  dot->add_option("--radius", dot_radius, "ball radius");
  dot->add_option("--out", out_path, "output file (default stdout)");
  dot->add_flag("--positive-only", positive_only, "drop inverse edges");
  dot->add_flag("--json", dot_json, "dump {radius, size, layers, words, edges} as JSON instead");

  CLI11_PARSE(app, argc, argv);

  try {
    auto write_core = [&](SGroup const& sg, ExtensionReport const& r) {
      if (dot_core.empty() || !r.core) return;
      auto ball = build_ball(sg, r.radius);
      write_to(dot_core, export_dot(ball, sg.semigroup.generators(), *r.core, true));
    };

    if (*extend) {
      auto spec = load_spec(spec_path);
      auto sg = sgroup_from_name(group, spec.semigroup);
      ExtensionReport r;
      if (!window_text.empty()) {
        std::vector<Word> window;
        for (auto const& tok : detail::split_ws(window_text)) window.push_back(parse_word(spec.semigroup.generators(), tok));
        r = check_surjective_up_to(sg, spec, radius, window);
      } else if (!base_json.empty()) {
        Json cells;
        try {
          cells = Json::parse(base_json);
        } catch (nlohmann::json::exception const& e) {
          throw ParseError(std::string("--base: ") + e.what());
        }
        r = check_point_extensible(sg, spec, pattern_from_json(spec.semigroup, spec.alphabet, cells), radius);
      } else {
        r = solve_ball(make_problem(sg, spec, radius));
      }
      write_core(sg, r);
      print(report_to_json(sg, spec, r, !no_witness));
      return 0;
    }

    if (*empty) {
      auto spec = load_spec(spec_path);
      auto sg = sgroup_from_name(group, spec.semigroup);
      auto r = check_empty(sg, spec, max_radius);
      write_core(sg, r);
      auto j = report_to_json(sg, spec, r, !no_witness);
      if (spec.kind() == SpecKind::Coset) j["obstructed"] = hom_obstruction(sg, spec).obstructed;
      print(j);
      return 0;
    }

    if (*rev) {
      auto p = presentation_arg(pres, spec_path);
      Json j{{"schema", kSchema}, {"presentation", format_presentation(p)}, {"L", length}};
      if (rev->count("--group")) {
        auto sg = sgroup_from_name(group, p);
        j["sgroup"] = sg.label;
        j["pairs"] = reversibility_to_json(p.generators(), left_reversible_bounded(sg, length));
      } else {
        j["pairs"] = reversibility_to_json(p.generators(), left_reversible_bounded(p, length));
      }
      print(j);
      return 0;
    }

    if (*frac) {
      auto p = presentation_arg(pres, spec_path);
      auto sg = sgroup_from_name(group, p);
      Json runs = Json::array();
      bool all = true;
      for (std::size_t r = 1; r <= window_r; ++r) {
        auto f = check_fractions_by_subshift(sg, r, search_r ? std::max(search_r, r) : 2 * r);
        all = all && f.ok();
        runs.push_back(fractions_to_json(f));
        if (!f.ok()) break;
      }
      print({{"schema", kSchema}, {"sgroup", sg.label}, {"verdict", all ? "AllOnesApproximable" : "FailsAt"},
             {"runs", runs}});
      return 0;
    }

    if (*groth) {
      auto j = abelian_to_json(grothendieck_group(parse_presentation(pres)));
      j["schema"] = kSchema;
      print(j);
      return 0;
    }

    if (*ent) {
      auto spec = load_spec(spec_path);
      double const scale = log2 ? 1.0 / std::log(2.0) : 1.0;
      std::ostringstream csv;
      Json rows = Json::array();
      Json summary{{"schema", kSchema}, {"log_base", log2 ? "2" : "e"}, {"n_max", n_max}};
      if (ent->count("--group")) {
        auto sg = sgroup_from_name(group, spec.semigroup);
        auto table = entropy_compare(sg, spec, n_max);
        csv << "n,window_size,count_s,count_g,estimate_s,estimate_g,difference\n";
        double max_diff = 0;
        for (auto const& r : table) {
          max_diff = std::max(max_diff, r.difference() * scale);
          csv << r.n << ',' << r.window_size << ',' << r.count_s << ',' << r.count_g << ','
              << csv_number(r.h_s * scale) << ',' << csv_number(r.h_g * scale) << ','
              << csv_number(r.difference() * scale) << '\n';
          rows.push_back({{"n", r.n}, {"window_size", r.window_size}, {"count_s", r.count_s.str()},
                          {"count_g", r.count_g.str()}, {"estimate_s", r.h_s * scale},
                          {"estimate_g", r.h_g * scale}});
        }
        summary["sgroup"] = sg.label;
        summary["max_difference"] = max_diff;
        summary["last_estimate"] = table.back().h_s * scale;
      } else {
        auto table = entropy_estimate(spec, n_max);
        csv << "n,window_size,count,estimate\n";
        for (auto const& e : table) {
          csv << e.n << ',' << e.window_size << ',' << e.count << ',' << csv_number(e.estimate * scale) << '\n';
          rows.push_back({{"n", e.n},
                          {"window_size", e.window_size},
                          {"count", e.count.str()},
                          {"estimate", e.estimate * scale},
                          {"method", e.method == CountMethod::TransferMatrix ? "transfer-matrix" : "enumeration"}});
        }
        summary["last_estimate"] = table.back().estimate * scale;
      }
      if (!csv_path.empty()) write_to(csv_path, csv.str());
      if (format == "csv") {
        std::cout << csv.str();
      } else {
        summary["rows"] = rows;
        print(summary);
      }
      return 0;
    }

    if (*ex) {
      cfg.validate();
      if (*ex_list) {
        Json list = Json::array();
        for (auto const& e : example_registry())
          list.push_back({{"name", e.name}, {"anchor", e.anchor}, {"expected", e.expected}});
        print({{"schema", kSchema}, {"examples", list}});
        return 0;
      }
      if (*ex_run) {
        auto j = run_example(ex_name, cfg);
        print(j);
        return j["matched"].get<bool>() ? 0 : 1;
      }
      if (*ex_all) {
        auto all = run_all_examples(cfg);
        bool ok = true;
        for (auto const& j : all) ok = ok && j["matched"].get<bool>();
        print({{"schema", kSchema}, {"all_matched", ok}, {"examples", all}});
        return ok ? 0 : 1;
      }
    }

    if (*dot) {
      auto p = presentation_arg(pres, spec_path);
      auto sg = sgroup_from_name(group, p);
      auto ball = build_ball(sg, dot_radius);
      write_to(out_path, dot_json ? ball_to_json(ball, p.generators()).dump(2) + "\n"
                                  : export_dot(ball, p.generators(), std::nullopt, positive_only));
      return 0;
    }
  } catch (Error const& e) {
    std::cerr << "natext: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
