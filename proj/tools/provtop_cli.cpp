#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "provtop/dmap.hpp"
#include "provtop/finite_space.hpp"
#include "provtop/icard.hpp"
#include "provtop/io.hpp"
#include "provtop/kripke.hpp"
#include "provtop/ordinal.hpp"
#include "provtop/selftest.hpp"

using namespace provtop;

namespace {

enum Exit { kOk = 0, kFailure = 1, kUsage = 2, kParse = 3, kCap = 4 };

struct Settings {
  bool json = false;
  std::string dot;
  std::size_t cap = 0;
  std::uint64_t seed = SelftestOptions{}.seed;
  std::size_t samples = SelftestOptions{}.samples;

  Limits limits() const {
    Limits l;
    if (cap > 0) {
      l.max_points_quadratic = cap;
      l.max_points = std::max(l.max_points, cap);
    }
    return l;
  }
};

// Inline JSON when the argument starts with '{', a file path otherwise.
Json load_json(const std::string& arg) {
  std::string text = arg;
  if (arg.empty() || arg.front() != '{') {
    std::ifstream in(arg);
    if (!in) throw InputError("cannot read " + arg);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
}

void write_dot(const Settings& s, const std::string& dot) {
  if (s.dot.empty()) return;
  std::ofstream out(s.dot);
  if (!out) throw std::runtime_error("cannot write " + s.dot);
  out << dot;
}

void render(const Json& j, std::ostream& os, const std::string& indent = "") {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_object() || (v.is_array() && !v.empty() && v.front().is_structured())) {
        os << indent << k << ":\n";
        render(v, os, indent + "  ");
      } else {
        os << indent << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (v.is_structured()) {
        os << indent << "-\n";
        render(v, os, indent + "  ");
      } else {
        os << indent << "- " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
      }
    }
  } else {
    os << indent << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
  }
}

void emit(const Settings& s, const Json& j) {
  if (s.json) std::cout << j.dump(2) << '\n';
  else render(j, std::cout);
}

std::map<std::size_t, Json> keyed(const Json& j) {
  if (!j.is_object()) throw InputError("plugins must be an object keyed by point");
  std::map<std::size_t, Json> out;
  for (const auto& [k, v] : j.items()) {
    try {
      out.emplace(std::stoul(k), v);
    } catch (const std::exception&) {
      throw InputError("plugin key \"" + k + "\" is not a point index");
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"provtop: topological semantics of provability logics"};
  app.fallthrough();
  app.require_subcommand(1);
  Settings s;
  app.add_flag("--json", s.json, "print JSON");
  app.add_option("--dot", s.dot, "write a DOT graph to this path");
  app.add_option("--cap", s.cap, "point cap for pairwise exhaustive checks");
  app.add_option("--seed", s.seed, "seed for sampled checks");
  app.add_option("--samples", s.samples, "ordinal samples per tree");

  std::function<void()> action;
  std::string a1, a2;
  std::vector<std::string> rest;

  auto* gl = app.add_subcommand("gl", "GL decision procedure");
  gl->require_subcommand(1);
  for (const char* verb : {"prove", "sat", "countermodel"}) {
    auto* c = gl->add_subcommand(verb);
    c->add_option("formula", a1)->required();
    const std::string v = verb;
    c->callback([&, v] {
      action = [&, v] {
        const Formula f = parse(a1);
        if (v == "sat") {
          const auto verdict = gl_decide(Formula::neg(f));
          Json out{{"satisfiable", !verdict.provable}};
          if (verdict.countermodel) {
            out["model"] = verdict_to_json(verdict)["countermodel"];
            write_dot(s, countermodel_to_dot(*verdict.countermodel, f));
          }
          emit(s, out);
          return;
        }
        const auto verdict = gl_decide(f);
        if (verdict.countermodel) write_dot(s, countermodel_to_dot(*verdict.countermodel, f));
        Json out = verdict_to_json(verdict);
        if (v == "prove" && !s.json) out.erase("countermodel");
        emit(s, out);
      };
    });
  }

  auto* gl3 = app.add_subcommand("gl3", "GL.3 decision procedure");
  gl3->require_subcommand(1);
  gl3->add_subcommand("prove")->callback([&] {
    action = [&] {
      const Formula f = parse(a1);
      const auto verdict = gl3_decide(f);
      if (verdict.countermodel) write_dot(s, countermodel_to_dot(*verdict.countermodel, f));
      emit(s, verdict_to_json(verdict));
    };
  });
  gl3->get_subcommand("prove")->add_option("formula", a1)->required();

  auto* space = app.add_subcommand("space", "finite topological spaces");
  space->require_subcommand(1);
  auto* classify_cmd = space->add_subcommand("classify");
  classify_cmd->add_option("space", a1)->required();
  classify_cmd->callback([&] {
    action = [&] { emit(s, report_to_json(classify(space_from_json(load_json(a1), s.limits()), s.limits()))); };
  });
  auto* plus_cmd = space->add_subcommand("plus");
  plus_cmd->add_option("space", a1)->required();
  plus_cmd->callback([&] {
    action = [&] { emit(s, space_to_json(plus_topology(space_from_json(load_json(a1), s.limits()), s.limits()))); };
  });
  auto* dsum_cmd = space->add_subcommand("dsum");
  dsum_cmd->add_option("base", a1)->required();
  dsum_cmd->add_option("plugins", a2, "object mapping isolated points to spaces")->required();
  dsum_cmd->callback([&] {
    action = [&] {
      const FiniteSpace base = space_from_json(load_json(a1), s.limits());
      std::map<std::size_t, FiniteSpace> plugins;
      for (const auto& [j, v] : keyed(load_json(a2))) plugins.emplace(j, space_from_json(v, s.limits()));
      const DSum sum = dsum(base, plugins, s.limits());
      Json out = space_to_json(sum.space);
      out["projection"] = sum.projection.assignment;
      out["offsets"] = sum.offsets;
      out["projection_is_dmap"] = is_dmap(sum.projection).ok();
      emit(s, out);
    };
  });
  auto* glp_cmd = space->add_subcommand("glpcheck");
  glp_cmd->add_option("spaces", rest, "topologies tau_0, tau_1, ... on one carrier")->required();
  glp_cmd->callback([&] {
    action = [&] {
      std::vector<FiniteSpace> tops;
      for (const auto& f : rest) tops.push_back(space_from_json(load_json(f), s.limits()));
      emit(s, glp_report_to_json(check_glp_space(tops, s.limits())));
    };
  });
  auto* mc_cmd = space->add_subcommand("modelcheck");
  std::string valuation;
  mc_cmd->add_option("formula", a1)->required();
  mc_cmd->add_option("spaces", rest, "topologies for modalities 0, 1, ...")->required();
  mc_cmd->add_option("--valuation", valuation, "JSON object of point sets; omit to test validity");
  mc_cmd->callback([&] {
    action = [&] {
      const Formula f = parse(a1);
      std::vector<FiniteSpace> tops;
      for (const auto& r : rest) tops.push_back(space_from_json(load_json(r), s.limits()));
      if (tops.empty()) throw InputError("no spaces given");
      if (!valuation.empty()) {
        const Valuation v = valuation_from_json(load_json(valuation), tops.front().size());
        emit(s, {{"truth_set", set_to_json(model_check(tops, v, f))}});
        return;
      }
      const Validity val = validates(tops, f, s.limits());
      Json out{{"valid", val.valid}};
      if (!val.valid) {
        out["countervaluation"] = valuation_to_json(val.countervaluation);
        out["point"] = val.point;
      }
      emit(s, out);
    };
  });

  auto* tree = app.add_subcommand("tree", "finite irreflexive trees");
  tree->require_subcommand(1);
  std::size_t fork_n = 0;
  auto* fork_cmd = tree->add_subcommand("fork");
  fork_cmd->add_option("n", fork_n)->required();
  fork_cmd->callback([&] {
    action = [&] {
      const Tree t = fork(fork_n);
      write_dot(s, tree_to_dot(t));
      emit(s, tree_to_json(t));
    };
  });
  auto* tdsum_cmd = tree->add_subcommand("dsum");
  tdsum_cmd->add_option("base", a1)->required();
  tdsum_cmd->add_option("plugins", a2, "object mapping leaves to trees")->required();
  tdsum_cmd->callback([&] {
    action = [&] {
      std::map<Node, Tree> plugins;
      for (const auto& [j, v] : keyed(load_json(a2))) plugins.emplace(j, tree_from_json(v));
      const Tree t = tree_dsum(tree_from_json(load_json(a1)), plugins);
      write_dot(s, tree_to_dot(t));
      emit(s, tree_to_json(t));
    };
  });
  auto* export_cmd = tree->add_subcommand("export");
  export_cmd->add_option("tree", a1)->required();
  export_cmd->callback([&] {
    action = [&] {
      const Tree t = tree_from_json(load_json(a1));
      const std::string dot = tree_to_dot(t);
      if (s.dot.empty()) std::cout << dot;
      write_dot(s, dot);
    };
  });

  auto* ord = app.add_subcommand("ord", "ordinals below epsilon_0");
  ord->require_subcommand(1);
  auto* cmp_cmd = ord->add_subcommand("cmp");
  cmp_cmd->add_option("a", a1)->required();
  cmp_cmd->add_option("b", a2)->required();
  cmp_cmd->callback([&] {
    action = [&] {
      const auto c = cmp(parse_ordinal(a1), parse_ordinal(a2));
      emit(s, {{"cmp", c < 0 ? "<" : c > 0 ? ">" : "="}});
    };
  });
  auto* add_cmd = ord->add_subcommand("add");
  add_cmd->add_option("a", a1)->required();
  add_cmd->add_option("b", a2)->required();
  add_cmd->callback([&] {
    action = [&] { emit(s, {{"sum", to_string(add(parse_ordinal(a1), parse_ordinal(a2)))}}); };
  });
  std::size_t ell_k = 1;
  auto* ell_cmd = ord->add_subcommand("ell");
  ell_cmd->add_option("a", a1)->required();
  ell_cmd->add_option("k", ell_k, "number of iterations");
  ell_cmd->callback([&] {
    action = [&] { emit(s, {{"ell", to_string(ell_iter(parse_ordinal(a1), ell_k))}}); };
  });

  auto* dm = app.add_subcommand("dmap", "d-maps from ordinals onto trees");
  dm->require_subcommand(1);
  auto* build_cmd = dm->add_subcommand("build");
  build_cmd->add_option("tree", a1)->required();
  build_cmd->callback([&] {
    action = [&] {
      const SymbolicDMap f(tree_from_json(load_json(a1)));
      Json pre = Json::array();
      for (Node x = 0; x < f.tree().size(); ++x) pre.push_back(to_string(f.least_preimage(x)));
      write_dot(s, dmap_to_dot(f));
      emit(s, {{"dom", to_string(f.dom())}, {"top", to_string(f.top())}, {"least_preimages", pre}});
    };
  });
  auto* apply_cmd = dm->add_subcommand("apply");
  apply_cmd->add_option("tree", a1)->required();
  apply_cmd->add_option("point", a2)->required();
  apply_cmd->callback([&] {
    action = [&] {
      const SymbolicDMap f(tree_from_json(load_json(a1)));
      emit(s, {{"node", f.apply(parse_ordinal(a2))}});
    };
  });
  std::size_t node = 0;
  auto* pre_cmd = dm->add_subcommand("preimage");
  pre_cmd->add_option("tree", a1)->required();
  pre_cmd->add_option("node", node)->required();
  pre_cmd->callback([&] {
    action = [&] {
      const SymbolicDMap f(tree_from_json(load_json(a1)));
      emit(s, {{"point", to_string(f.least_preimage(node))}});
    };
  });
  auto* refute_cmd = dm->add_subcommand("refute");
  refute_cmd->add_option("formula", a1)->required();
  refute_cmd->callback([&] {
    action = [&] {
      const auto r = refute_on_ordinal(parse(a1));
      if (!r) {
        emit(s, {{"provable", true}});
        return;
      }
      write_dot(s, dmap_to_dot(SymbolicDMap(r->countermodel.tree)));
      emit(s, refutation_to_json(*r));
    };
  });

  auto* ic = app.add_subcommand("icard", "Icard semantics of words");
  ic->require_subcommand(1);
  auto* eval_cmd = ic->add_subcommand("eval");
  eval_cmd->add_option("formula", a1, "word or boolean combination of words")->required();
  eval_cmd->add_option("point", a2)->required();
  eval_cmd->callback([&] {
    action = [&] { emit(s, {{"holds", eval_closed(parse(a1), parse_ordinal(a2))}}); };
  });
  auto* min_cmd = ic->add_subcommand("min");
  min_cmd->add_option("word", a1)->required();
  min_cmd->callback([&] {
    action = [&] { emit(s, {{"min", to_string(min_word(require_word(parse(a1))))}}); };
  });
  auto* entail_cmd = ic->add_subcommand("entail");
  entail_cmd->add_option("a", a1)->required();
  entail_cmd->add_option("b", a2)->required();
  entail_cmd->callback([&] {
    action = [&] {
      const Word a = require_word(parse(a1));
      const Word b = require_word(parse(a2));
      emit(s, {{"provable", word_entails(a, b)}, {"min", to_string(min_word(a))}});
    };
  });
  auto* decide_cmd = ic->add_subcommand("decide");
  decide_cmd->add_option("a", a1)->required();
  decide_cmd->add_option("bs", rest, "disjuncts");
  decide_cmd->callback([&] {
    action = [&] {
      std::vector<Word> bs;
      for (const auto& b : rest) bs.push_back(require_word(parse(b)));
      emit(s, decision_to_json(decide_word_implication(require_word(parse(a1)), bs)));
    };
  });
  auto* tri_cmd = ic->add_subcommand("trichotomy");
  tri_cmd->add_option("a", a1)->required();
  tri_cmd->add_option("b", a2)->required();
  tri_cmd->callback([&] {
    action = [&] {
      emit(s, {{"case", to_string(trichotomy(require_word(parse(a1)), require_word(parse(a2))))}});
    };
  });

  app.add_subcommand("selftest", "run the acceptance suites")->callback([&] {
    action = [&] {
      SelftestOptions o;
      o.seed = s.seed;
      o.samples = s.samples;
      Json results = Json::array();
      bool all = true;
      run_selftest(o, [&](const CriterionResult& r) {
        all = all && r.passed;
        if (!s.json)
          std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << ' ' << r.title << " -- "
                    << r.detail << '\n';
        results.push_back({{"id", r.id}, {"title", r.title}, {"passed", r.passed},
                           {"detail", r.detail}, {"seconds", r.seconds}});
      });
      if (s.json) std::cout << Json{{"passed", all}, {"criteria", results}}.dump(2) << '\n';
      if (!all) throw std::runtime_error("selftest failed");
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  try {
    if (action) action();
    return kOk;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kParse;
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << '\n';
    return kCap;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kParse;
  } catch (const std::out_of_range& e) {
    std::cerr << "out of range: " << e.what() << '\n';
    return kParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
}
