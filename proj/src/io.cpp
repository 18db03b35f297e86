#include "provtop/io.hpp"

#include <sstream>

namespace provtop {

namespace {

std::size_t as_index(const Json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    throw InputError(std::string(what) + " must be a non-negative integer");
  return j.get<std::size_t>();
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing key \"") + key + "\"");
  return j.at(key);
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

Json set_to_json(PointSet s) {
  Json out = Json::array();
  for (std::size_t x : members(s)) out.push_back(x);
  return out;
}

PointSet set_from_json(const Json& j, std::size_t n) {
  if (!j.is_array()) throw InputError("point set must be an array");
  PointSet s = 0;
  for (const auto& e : j) {
    const std::size_t x = as_index(e, "point");
    if (x >= n) throw InputError("point " + std::to_string(x) + " out of range");
    s |= bit(x);
  }
  return s;
}

FiniteSpace space_from_json(const Json& j, const Limits& limits) {
  if (!j.is_object()) throw InputError("space must be a JSON object");
  if (j.contains("order")) {
    const Json& order = j.at("order");
    if (!order.is_array()) throw InputError("\"order\" must be an array of pairs");
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::size_t n = 0;
    for (const auto& p : order) {
      if (!p.is_array() || p.size() != 2) throw InputError("order entries must be pairs");
      pairs.emplace_back(as_index(p[0], "point"), as_index(p[1], "point"));
      n = std::max({n, pairs.back().first + 1, pairs.back().second + 1});
    }
    if (j.contains("points")) n = std::max(n, as_index(j.at("points"), "points"));
    const std::string mode = j.value("mode", std::string("upset"));
    if (mode != "upset" && mode != "left") throw InputError("mode must be \"upset\" or \"left\"");
    return upset_topology(n, pairs, mode == "upset" ? OrderMode::Upset : OrderMode::Left);
  }
  const std::size_t n = as_index(field(j, "points"), "points");
  if (n > kMaxRepresentablePoints) throw CapExceeded("too many points");
  std::vector<PointSet> sets;
  const bool subbase = j.contains("subbase");
  const Json& family = subbase ? j.at("subbase") : field(j, "opens");
  if (!family.is_array()) throw InputError("family of sets must be an array");
  for (const auto& s : family) sets.push_back(set_from_json(s, n));
  if (subbase) return from_subbase(n, sets, limits);
  return FiniteSpace(n, std::move(sets));
}

Json space_to_json(const FiniteSpace& s) {
  Json opens = Json::array();
  for (PointSet u : s.opens()) opens.push_back(set_to_json(u));
  return {{"points", s.size()}, {"opens", opens}};
}

Json report_to_json(const SpaceReport& r) {
  Json ranks = Json::array();
  for (const auto& k : r.rank_of_point) ranks.push_back(k ? Json(*k) : Json(nullptr));
  return {{"scattered", r.scattered}, {"t_d", r.t_d},       {"t1", r.t1},
          {"discrete", r.discrete},   {"magari", r.magari}, {"primal", r.primal},
          {"cb_rank", r.cb_rank},     {"rank_of_point", ranks}};
}

Json glp_report_to_json(const GlpSpaceReport& r) {
  Json levels = Json::array();
  for (const auto& l : r.levels) levels.push_back({{"D0", l.scattered}});
  Json pairs = Json::array();
  for (const auto& p : r.pairs) {
    Json e{{"D1", p.derived_sets_open}, {"D2", p.refines}};
    if (p.d1_witness) e["D1_witness"] = set_to_json(*p.d1_witness);
    if (p.d2_witness) e["D2_witness"] = set_to_json(*p.d2_witness);
    pairs.push_back(e);
  }
  return {{"ok", r.ok()}, {"levels", levels}, {"pairs", pairs}};
}

Tree tree_from_json(const Json& j) {
  const Json& parent = field(j, "parent");
  if (!parent.is_array()) throw InputError("\"parent\" must be an array");
  std::vector<std::optional<Node>> links;
  for (const auto& p : parent)
    links.push_back(p.is_null() ? std::nullopt : std::optional<Node>(as_index(p, "parent")));
  return Tree(std::move(links));
}

Json tree_to_json(const Tree& t) {
  Json parent = Json::array();
  for (const auto& p : t.parents()) parent.push_back(p ? Json(*p) : Json(nullptr));
  return {{"parent", parent}};
}

Json valuation_to_json(const Valuation& v) {
  Json out = Json::object();
  for (const auto& [name, s] : v) out[name] = set_to_json(s);
  return out;
}

Valuation valuation_from_json(const Json& j, std::size_t n) {
  if (!j.is_object()) throw InputError("valuation must be an object");
  Valuation v;
  for (const auto& [name, s] : j.items()) v[name] = set_from_json(s, n);
  return v;
}

Json verdict_to_json(const GlVerdict& v) {
  Json out{{"provable", v.provable}};
  if (v.countermodel) {
    out["countermodel"] = {{"tree", tree_to_json(v.countermodel->tree)},
                           {"valuation", valuation_to_json(v.countermodel->valuation)},
                           {"node", v.countermodel->node}};
  }
  return out;
}

Json refutation_to_json(const OrdinalRefutation& r) {
  return {{"formula", print(r.formula)},
          {"tree", tree_to_json(r.countermodel.tree)},
          {"node", r.countermodel.node},
          {"dom", to_string(r.dom)},
          {"point", to_string(r.point)},
          {"valuation", valuation_to_json(r.countermodel.valuation)}};
}

Json decision_to_json(const WordDecision& d) {
  Json out{{"provable", d.provable}, {"min", to_string(d.min)}};
  out["refuted_at"] = d.refuted_at ? Json(to_string(*d.refuted_at)) : Json(nullptr);
  return out;
}

std::string tree_to_dot(const Tree& t) {
  std::ostringstream os;
  os << "digraph tree {\n  rankdir=BT;\n  node [shape=circle];\n";
  for (Node x = 0; x < t.size(); ++x) os << "  n" << x << " [label=\"" << x << "\"];\n";
  for (Node x = 0; x < t.size(); ++x)
    for (Node c : t.children(x)) os << "  n" << x << " -> n" << c << ";\n";
  os << "}\n";
  return os.str();
}

std::string countermodel_to_dot(const Countermodel& m, const Formula& phi) {
  std::vector<std::vector<std::string>> labels(m.tree.size());
  for (const auto& g : closure(phi)) {
    if (g.op() == Op::Top) continue;
    const PointSet s = model_check_tree(m.tree, m.valuation, g);
    for (std::size_t x : members(s)) labels[x].push_back(print(g));
  }
  std::ostringstream os;
  os << "digraph countermodel {\n  rankdir=BT;\n  node [shape=box, fontname=\"monospace\"];\n";
  for (Node x = 0; x < m.tree.size(); ++x) {
    os << "  n" << x << " [label=\"" << x;
    for (const auto& l : labels[x]) os << "\\n" << escape(l);
    os << '"';
    if (x == m.node) os << ", peripheries=2";
    os << "];\n";
  }
  for (Node x = 0; x < m.tree.size(); ++x)
    for (Node c : m.tree.children(x)) os << "  n" << x << " -> n" << c << ";\n";
  os << "}\n";
  return os.str();
}

std::string dmap_to_dot(const SymbolicDMap& f) {
  const Tree& t = f.tree();
  std::ostringstream os;
  os << "digraph dmap {\n  rankdir=BT;\n  label=\"dom " << to_string(f.dom()) << "\";\n";
  os << "  node [shape=ellipse];\n";
  for (Node x = 0; x < t.size(); ++x)
    os << "  n" << x << " [label=\"" << x << "\\n" << to_string(f.least_preimage(x)) << "\"];\n";
  for (Node x = 0; x < t.size(); ++x)
    for (Node c : t.children(x)) os << "  n" << x << " -> n" << c << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace provtop
