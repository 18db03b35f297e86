#include "provtop/kripke.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <unordered_map>

namespace provtop {

Tree::Tree(std::vector<std::optional<Node>> parent) : parent_(std::move(parent)) {
  const std::size_t n = parent_.size();
  if (n == 0) throw TreeError("a tree needs at least one node");
  children_.assign(n, {});
  std::size_t roots = 0;
  for (Node x = 0; x < n; ++x) {
    if (!parent_[x]) {
      ++roots;
      root_ = x;
      continue;
    }
    if (*parent_[x] >= n) throw TreeError("parent of node " + std::to_string(x) + " out of range");
    children_[*parent_[x]].push_back(x);
  }
  if (roots != 1) throw TreeError("a tree needs exactly one root, found " + std::to_string(roots));

  // Reachability from the root rules out cycles among the other nodes.
  std::vector<Node> order{root_};
  for (std::size_t i = 0; i < order.size(); ++i)
    for (Node c : children_[order[i]]) order.push_back(c);
  if (order.size() != n) throw TreeError("parent links contain a cycle");

  height_.assign(n, 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    for (Node c : children_[*it]) height_[*it] = std::max(height_[*it], height_[c] + 1);
}

Tree Tree::point() { return Tree({std::nullopt}); }

std::vector<Node> Tree::leaves() const {
  std::vector<Node> out;
  for (Node x = 0; x < size(); ++x)
    if (is_leaf(x)) out.push_back(x);
  return out;
}

std::size_t Tree::depth(Node x) const {
  std::size_t d = 0;
  for (auto p = parent_.at(x); p; p = parent_[*p]) ++d;
  return d;
}

std::vector<Node> Tree::descendants(Node x) const {
  std::vector<Node> out;
  std::vector<Node> stack(children_.at(x).rbegin(), children_.at(x).rend());
  while (!stack.empty()) {
    const Node y = stack.back();
    stack.pop_back();
    out.push_back(y);
    stack.insert(stack.end(), children_[y].rbegin(), children_[y].rend());
  }
  return out;
}

bool Tree::sees(Node x, Node y) const {
  for (auto p = parent_.at(y); p; p = parent_[*p])
    if (*p == x) return true;
  return false;
}

Tree fork(std::size_t n) {
  if (n == 0) throw TreeError("fork needs at least one leaf");
  std::vector<std::optional<Node>> parent{std::nullopt};
  parent.insert(parent.end(), n, Node{0});
  return Tree(std::move(parent));
}

Tree chain(std::size_t n) {
  if (n == 0) throw TreeError("chain needs at least one node");
  std::vector<std::optional<Node>> parent{std::nullopt};
  for (Node x = 1; x < n; ++x) parent.push_back(x - 1);
  return Tree(std::move(parent));
}

Tree tree_dsum(const Tree& base, const std::map<Node, Tree>& plugins) {
  auto parent = base.parents();
  for (const auto& [leaf, plug] : plugins) {
    if (leaf >= base.size() || !base.is_leaf(leaf))
      throw TreeError("plug node " + std::to_string(leaf) + " is not a leaf of the base");
    std::vector<Node> renum(plug.size());
    renum[plug.root()] = leaf;
    for (Node y = 0; y < plug.size(); ++y)
      if (y != plug.root()) renum[y] = parent.size() + (y < plug.root() ? y : y - 1);
    std::vector<std::optional<Node>> extra;
    for (Node y = 0; y < plug.size(); ++y)
      if (y != plug.root()) extra.push_back(renum[*plug.parent(y)]);
    parent.insert(parent.end(), extra.begin(), extra.end());
  }
  return Tree(std::move(parent));
}

namespace {

std::string form_at(const Tree& t, Node x) {
  std::vector<std::string> kids;
  for (Node c : t.children(x)) kids.push_back(form_at(t, c));
  std::sort(kids.begin(), kids.end());
  std::string s = "(";
  for (const auto& k : kids) s += k;
  return s + ")";
}

void build_from_form(const std::string& s, std::size_t& pos, std::optional<Node> parent,
                     std::vector<std::optional<Node>>& out) {
  const Node me = out.size();
  out.push_back(parent);
  ++pos;  // '('
  while (s[pos] == '(') build_from_form(s, pos, me, out);
  ++pos;  // ')'
}

Tree from_form(const std::string& s) {
  std::vector<std::optional<Node>> parent;
  std::size_t pos = 0;
  build_from_form(s, pos, std::nullopt, parent);
  return Tree(std::move(parent));
}

Tree subtree(const Tree& t, Node x) {
  std::vector<Node> nodes{x};
  const auto desc = t.descendants(x);
  nodes.insert(nodes.end(), desc.begin(), desc.end());
  std::map<Node, Node> renum;
  for (std::size_t i = 0; i < nodes.size(); ++i) renum[nodes[i]] = i;
  std::vector<std::optional<Node>> parent(nodes.size());
  for (std::size_t i = 1; i < nodes.size(); ++i) parent[i] = renum.at(*t.parent(nodes[i]));
  return Tree(std::move(parent));
}

std::vector<PointSet> descendant_masks(const Tree& t) {
  if (t.size() > kMaxRepresentablePoints)
    throw CapExceeded("trees are limited to " + std::to_string(kMaxRepresentablePoints) +
                      " nodes");
  std::vector<PointSet> down(t.size(), 0);
  for (Node x = 0; x < t.size(); ++x)
    for (Node y : t.descendants(x)) down[x] |= bit(y);
  return down;
}

}  // namespace

std::string canonical_form(const Tree& t) { return form_at(t, t.root()); }

Tree canonical_tree(const Tree& t) { return from_form(canonical_form(t)); }

std::vector<Tree> all_trees(std::size_t n) {
  if (n == 0) return {};
  std::vector<std::string> forms{"()"};
  for (std::size_t k = 2; k <= n; ++k) {
    std::vector<std::string> next;
    for (const auto& f : forms) {
      const Tree t = from_form(f);
      for (Node x = 0; x < t.size(); ++x) {
        auto parent = t.parents();
        parent.push_back(x);
        next.push_back(canonical_form(Tree(std::move(parent))));
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    forms = std::move(next);
  }
  std::vector<Tree> out;
  for (const auto& f : forms) out.push_back(from_form(f));
  return out;
}

Tree reconstruct(const Tree& t) {
  const auto& kids = t.children(t.root());
  if (kids.empty()) return Tree::point();
  std::map<Node, Tree> plugins;
  for (std::size_t i = 0; i < kids.size(); ++i)
    if (!t.is_leaf(kids[i])) plugins.emplace(i + 1, reconstruct(subtree(t, kids[i])));
  return tree_dsum(fork(kids.size()), plugins);
}

FiniteSpace upset_space(const Tree& t) {
  std::vector<std::pair<std::size_t, std::size_t>> order;
  for (Node x = 0; x < t.size(); ++x)
    for (Node y : t.descendants(x)) order.emplace_back(x, y);
  return upset_topology(t.size(), order, OrderMode::Upset);
}

namespace {

PointSet eval_tree(const std::vector<PointSet>& down, PointSet all, const Valuation& v,
                   const Formula& f) {
  auto rec = [&](const Formula& g) { return eval_tree(down, all, v, g); };
  switch (f.op()) {
    case Op::Top: return all;
    case Op::Bot: return 0;
    case Op::Var: {
      const auto it = v.find(f.name());
      return it == v.end() ? 0 : it->second & all;
    }
    case Op::Not: return all & ~rec(f.child());
    case Op::And: return rec(f.lhs()) & rec(f.rhs());
    case Op::Or: return rec(f.lhs()) | rec(f.rhs());
    case Op::Imp: return (all & ~rec(f.lhs())) | rec(f.rhs());
    case Op::Dia:
    case Op::Box: {
      if (f.index() != 0) throw std::invalid_argument("tree semantics has only modality 0");
      const PointSet s = rec(f.child());
      PointSet out = 0;
      for (Node x = 0; x < down.size(); ++x) {
        const bool hit = f.op() == Op::Dia ? (down[x] & s) != 0 : subset_of(down[x], s);
        if (hit) out |= bit(x);
      }
      return out;
    }
  }
  return 0;
}

void require_gl(const Formula& f) {
  if (modality_bound(f) > 1)
    throw std::invalid_argument("GL formulas may only use modality 0: " + print(f));
}

// Tableau over signed subformulas; literal 2i is "i true", 2i+1 is "i false".
class GlTableau {
 public:
  explicit GlTableau(const Formula& f) {
    for (const auto& g : closure(f)) {
      index_.emplace(g, cl_.size());
      cl_.push_back(g);
    }
    root_lit_ = lit(f, false);
  }

  std::optional<Countermodel> refute() {
    Label start(2 * cl_.size(), false);
    start[root_lit_] = true;
    const int frag = solve(std::move(start));
    if (frag < 0) return std::nullopt;
    parents_.clear();
    labels_.clear();
    materialize(frag, std::nullopt);
    Countermodel m{Tree(parents_), {}, 0};
    for (std::size_t i = 0; i < cl_.size(); ++i) {
      if (cl_[i].op() != Op::Var) continue;
      PointSet s = 0;
      for (Node x = 0; x < labels_.size(); ++x)
        if (labels_[x][2 * i]) s |= bit(x);
      m.valuation[cl_[i].name()] = s;
    }
    return m;
  }

 private:
  using Label = std::vector<bool>;
  struct Frag {
    Label label;
    std::vector<std::pair<std::size_t, int>> kids;  // (demand literal, fragment)
  };
  enum class Kind { None, Alpha, Beta, Clash };
  struct Rule {
    Kind kind = Kind::None;
    std::vector<std::size_t> parts;
  };

  std::size_t lit(const Formula& g, bool truth) const { return 2 * index_.at(g) + (truth ? 0 : 1); }

  Rule rule(std::size_t l) const {
    const Formula& g = cl_[l / 2];
    const bool t = l % 2 == 0;
    switch (g.op()) {
      case Op::Top: return t ? Rule{} : Rule{Kind::Clash, {}};
      case Op::Bot: return t ? Rule{Kind::Clash, {}} : Rule{};
      case Op::Not: return {Kind::Alpha, {lit(g.child(), !t)}};
      case Op::And:
        return {t ? Kind::Alpha : Kind::Beta, {lit(g.lhs(), t), lit(g.rhs(), t)}};
      case Op::Or:
        return {t ? Kind::Beta : Kind::Alpha, {lit(g.lhs(), t), lit(g.rhs(), t)}};
      case Op::Imp:
        return {t ? Kind::Beta : Kind::Alpha, {lit(g.lhs(), !t), lit(g.rhs(), t)}};
      default: return {};
    }
  }

  // T<0>a and F[0]a need a successor; T[0]b and F<0>b constrain all successors.
  bool is_demand(std::size_t l) const {
    const Op op = cl_[l / 2].op();
    return (op == Op::Dia && l % 2 == 0) || (op == Op::Box && l % 2 == 1);
  }
  bool is_boxlike(std::size_t l) const {
    const Op op = cl_[l / 2].op();
    return (op == Op::Box && l % 2 == 0) || (op == Op::Dia && l % 2 == 1);
  }
  std::size_t body(std::size_t l) const { return lit(cl_[l / 2].child(), l % 2 == 0); }

  int solve(Label s) {
    if (auto it = memo_.find(s); it != memo_.end()) return it->second;
    const int result = solve_fresh(s);
    memo_.emplace(std::move(s), result);
    return result;
  }

  int solve_fresh(const Label& s) {
    for (std::size_t i = 0; i < cl_.size(); ++i)
      if (s[2 * i] && s[2 * i + 1]) return -1;
    for (std::size_t l = 0; l < s.size(); ++l) {
      if (!s[l]) continue;
      const Rule r = rule(l);
      if (r.kind == Kind::Clash) return -1;
      if (r.kind == Kind::Alpha &&
          !std::all_of(r.parts.begin(), r.parts.end(), [&](std::size_t p) { return s[p]; })) {
        Label next = s;
        for (std::size_t p : r.parts) next[p] = true;
        return solve(std::move(next));
      }
      if (r.kind == Kind::Beta &&
          std::none_of(r.parts.begin(), r.parts.end(), [&](std::size_t p) { return s[p]; })) {
        for (std::size_t p : r.parts) {
          Label next = s;
          next[p] = true;
          if (const int got = solve(std::move(next)); got >= 0) return got;
        }
        return -1;
      }
    }

    Label inherited(s.size(), false);
    for (std::size_t l = 0; l < s.size(); ++l) {
      if (s[l] && is_boxlike(l)) {
        inherited[l] = true;
        inherited[body(l)] = true;
      }
    }
    Frag frag{s, {}};
    for (std::size_t l = 0; l < s.size(); ++l) {
      if (!s[l] || !is_demand(l)) continue;
      Label child = inherited;
      child[body(l)] = true;
      child[l ^ 1] = true;  // the witness is a last one: Loeb
      const int got = solve(std::move(child));
      if (got < 0) return -1;
      frag.kids.emplace_back(l, got);
    }
    frags_.push_back(std::move(frag));
    return static_cast<int>(frags_.size() - 1);
  }

  Node materialize(int id, std::optional<Node> parent) {
    if (parents_.size() >= kMaxRepresentablePoints)
      throw CapExceeded("countermodel would exceed " + std::to_string(kMaxRepresentablePoints) +
                        " nodes");
    const Node me = parents_.size();
    parents_.push_back(parent);
    labels_.push_back(frags_[static_cast<std::size_t>(id)].label);
    const auto kids = frags_[static_cast<std::size_t>(id)].kids;
    for (const auto& [demand, child] : kids) {
      // Another descendant may already carry the witness.
      const std::size_t witness = body(demand);
      bool met = false;
      for (Node y = me + 1; y < labels_.size() && !met; ++y) met = labels_[y][witness];
      if (!met) materialize(child, me);
    }
    return me;
  }

  std::vector<Formula> cl_;
  std::map<Formula, std::size_t> index_;
  std::size_t root_lit_ = 0;
  std::unordered_map<Label, int> memo_;
  std::vector<Frag> frags_;
  std::vector<std::optional<Node>> parents_;
  std::vector<Label> labels_;
};

bool refutes(const Countermodel& m, const Formula& f) {
  return !contains(model_check_tree(m.tree, m.valuation, f), m.node);
}

}  // namespace

PointSet model_check_tree(const Tree& t, const Valuation& v, const Formula& f) {
  return eval_tree(descendant_masks(t), full_set(t.size()), v, f);
}

Countermodel minimize_countermodel(const Countermodel& m, const Formula& f) {
  Countermodel cur = m;
  bool changed = true;
  while (changed) {
    changed = false;
    for (Node leaf : cur.tree.leaves()) {
      if (leaf == cur.node || cur.tree.size() == 1) continue;
      std::vector<Node> renum(cur.tree.size());
      std::vector<std::optional<Node>> parent;
      for (Node x = 0, k = 0; x < cur.tree.size(); ++x)
        if (x != leaf) renum[x] = k++;
      for (Node x = 0; x < cur.tree.size(); ++x)
        if (x != leaf) {
          const auto p = cur.tree.parent(x);
          parent.push_back(p ? std::optional<Node>(renum[*p]) : std::nullopt);
        }
      Countermodel trial{Tree(std::move(parent)), {}, renum[cur.node]};
      for (const auto& [name, s] : cur.valuation) {
        PointSet t = 0;
        for (Node x : members(s))
          if (x != leaf) t |= bit(renum[x]);
        trial.valuation[name] = t;
      }
      if (refutes(trial, f)) {
        cur = std::move(trial);
        changed = true;
        break;
      }
    }
  }
  return cur;
}

GlVerdict gl_decide(const Formula& f, const GlOptions& options) {
  require_gl(f);
  GlTableau tableau(f);
  auto model = tableau.refute();
  if (!model) return {};
  if (!refutes(*model, f))
    throw std::logic_error("tableau countermodel does not refute " + print(f));
  if (options.minimize) model = minimize_countermodel(*model, f);
  return {false, std::move(model)};
}

GlVerdict gl3_decide(const Formula& f, const GlOptions& options) {
  require_gl(f);
  const auto subs = closure(f);
  std::vector<Formula> cl(subs.begin(), subs.end());
  std::stable_sort(cl.begin(), cl.end(),
                   [](const Formula& a, const Formula& b) { return size(a) < size(b); });
  std::map<Formula, std::size_t> index;
  for (std::size_t i = 0; i < cl.size(); ++i) index.emplace(cl[i], i);
  const auto var_set = variables(f);
  const std::vector<std::string> vars(var_set.begin(), var_set.end());
  if (vars.size() > 16) throw CapExceeded("gl3_decide handles at most 16 variables");
  const std::size_t n = cl.size();
  const std::size_t goal = index.at(f);

  // A state records which closure formulas are true, resp. false, somewhere above.
  using State = std::vector<bool>;
  std::vector<State> states{State(2 * n, false)};
  std::vector<std::pair<std::size_t, std::uint32_t>> prev{{0, 0}};
  std::unordered_map<State, std::size_t> seen{{states[0], 0}};
  std::vector<bool> truth(n);

  auto point_truth = [&](const State& above, std::uint32_t letter) {
    for (std::size_t i = 0; i < n; ++i) {
      const Formula& g = cl[i];
      auto at = [&](const Formula& h) { return static_cast<bool>(truth[index.at(h)]); };
      switch (g.op()) {
        case Op::Top: truth[i] = true; break;
        case Op::Bot: truth[i] = false; break;
        case Op::Var: {
          const auto pos = std::find(vars.begin(), vars.end(), g.name()) - vars.begin();
          truth[i] = (letter >> pos) & 1u;
          break;
        }
        case Op::Not: truth[i] = !at(g.child()); break;
        case Op::And: truth[i] = at(g.lhs()) && at(g.rhs()); break;
        case Op::Or: truth[i] = at(g.lhs()) || at(g.rhs()); break;
        case Op::Imp: truth[i] = !at(g.lhs()) || at(g.rhs()); break;
        case Op::Dia: truth[i] = above[2 * index.at(g.child())]; break;
        case Op::Box: truth[i] = !above[2 * index.at(g.child()) + 1]; break;
      }
    }
  };

  const std::uint32_t letters = std::uint32_t{1} << vars.size();
  for (std::size_t head = 0; head < states.size(); ++head) {
    for (std::uint32_t letter = 0; letter < letters; ++letter) {
      const State above = states[head];
      point_truth(above, letter);
      if (!truth[goal]) {
        // Collect letters from the new bottom point upwards.
        std::vector<std::uint32_t> path{letter};
        for (std::size_t s = head; s != 0; s = prev[s].first) path.push_back(prev[s].second);
        Countermodel m{chain(path.size()), {}, 0};
        for (std::size_t j = 0; j < vars.size(); ++j) {
          PointSet s = 0;
          for (Node x = 0; x < path.size(); ++x)
            if ((path[x] >> j) & 1u) s |= bit(x);
          m.valuation[vars[j]] = s;
        }
        if (!refutes(m, f))
          throw std::logic_error("chain countermodel does not refute " + print(f));
        return {false, std::move(m)};
      }
      State next = above;
      for (std::size_t i = 0; i < n; ++i) next[2 * i + (truth[i] ? 0 : 1)] = true;
      if (seen.count(next)) continue;
      if (states.size() >= options.max_states)
        throw CapExceeded("gl3_decide exceeded its state budget");
      seen.emplace(next, states.size());
      states.push_back(std::move(next));
      prev.emplace_back(head, letter);
    }
  }
  return {};
}

}  // namespace provtop
