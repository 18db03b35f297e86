#include "provtop/dmap.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace provtop {

SymbolicDMap::SymbolicDMap(Tree t) : tree_(std::move(t)), blocks_(tree_.size()) {
  if (tree_.size() > kMaxRepresentablePoints)
    throw CapExceeded("d-maps are built for trees of at most " +
                      std::to_string(kMaxRepresentablePoints) + " nodes");
  std::vector<Node> order{tree_.root()};
  for (std::size_t i = 0; i < order.size(); ++i)
    for (Node c : tree_.children(order[i])) order.push_back(c);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    Block& b = blocks_[*it];
    b.partial.push_back(Ordinal());
    for (Node c : tree_.children(*it)) {
      b.partial.push_back(add(b.partial.back(), blocks_[c].dom));
      b.below |= bit(c) | blocks_[c].below;
    }
    b.cycle = b.partial.back();
    b.top = times_omega(b.cycle);
    b.dom = add(b.top, Ordinal(1));
  }
  top_ = tree_.size() == 1 ? Ordinal(1) : blocks_[tree_.root()].top;
  dom_ = add(top_, Ordinal(1));
}

SymbolicDMap::Position SymbolicDMap::locate(Node x, const Ordinal& xi) const {
  const Block& b = blocks_[x];
  const Ordinal e = b.cycle.leading_exponent();
  const Natural c = b.cycle.leading_coefficient();
  Natural m = xi.coefficient_of(e) / c;
  if (xi.leading_exponent() > e) throw std::logic_error("point beyond block top");
  if (m > 0 && mul_nat(b.cycle, m) > xi) m -= 1;
  return {m, sub_left(xi, mul_nat(b.cycle, m))};
}

Node SymbolicDMap::apply(const Ordinal& xi) const {
  if (!(xi < dom()))
    throw std::out_of_range("point " + to_string(xi) + " outside the domain " + to_string(dom()));
  Node x = tree_.root();
  if (tree_.size() == 1) return x;
  Ordinal cur = xi;
  while (!(cur == blocks_[x].top)) {
    const auto pos = locate(x, cur);
    const auto& s = blocks_[x].partial;
    std::size_t i = 0;
    while (!(pos.offset < s[i + 1])) ++i;
    cur = sub_left(pos.offset, s[i]);
    x = tree_.children(x)[i];
  }
  return x;
}

Ordinal SymbolicDMap::least_preimage(Node t) const {
  if (t >= tree_.size()) throw std::out_of_range("node out of range");
  if (tree_.size() == 1) return Ordinal();
  std::vector<Node> path{t};
  while (auto p = tree_.parent(path.back())) path.push_back(*p);
  Ordinal out;
  for (std::size_t j = path.size(); j-- > 1;) {
    const auto& kids = tree_.children(path[j]);
    const auto i = static_cast<std::size_t>(std::find(kids.begin(), kids.end(), path[j - 1]) - kids.begin());
    out = add(out, blocks_[path[j]].partial[i]);
  }
  out = add(out, blocks_[t].top);
  if (apply(out) != t) throw std::logic_error("least preimage does not map back");
  return out;
}

PointSet SymbolicDMap::image_in_cycle(Node x, const Ordinal& lo, const Ordinal& hi) const {
  const auto& s = blocks_[x].partial;
  const auto& kids = tree_.children(x);
  PointSet out = 0;
  for (std::size_t i = 0; i < kids.size(); ++i) {
    const Ordinal& l = std::max(lo, s[i]);
    const Ordinal& h = std::min(hi, s[i + 1]);
    if (l < h) out |= image_in(kids[i], sub_left(l, s[i]), sub_left(h, s[i]));
  }
  return out;
}

PointSet SymbolicDMap::image_in(Node x, const Ordinal& a, const Ordinal& b0) const {
  const Block& blk = blocks_[x];
  PointSet out = 0;
  Ordinal b = b0;
  if (!(a < b)) return 0;
  if (blk.top < b) {
    if (!(blk.top < a)) out |= bit(x);
    b = blk.top;
  }
  if (!(a < b)) return out;
  if (b == blk.top) return out | blk.below;
  const auto pa = locate(x, a);
  const auto pb = locate(x, b);
  if (pb.cycle > pa.cycle + 1) return out | blk.below;
  if (pb.cycle == pa.cycle) return out | image_in_cycle(x, pa.offset, pb.offset);
  return out | image_in_cycle(x, pa.offset, blk.cycle) | image_in_cycle(x, Ordinal(), pb.offset);
}

PointSet SymbolicDMap::image_of_interval(const Ordinal& a, const Ordinal& b) const {
  if (dom() < b) throw std::out_of_range("interval leaves the domain");
  if (tree_.size() == 1) return a < b ? bit(tree_.root()) : 0;
  return image_in(tree_.root(), a, b);
}

PointSet SymbolicDMap::limit_image(const Ordinal& xi) const {
  if (!(xi < dom())) throw std::out_of_range("point outside the domain");
  if (!xi.is_limit()) return 0;
  // xi = d + w^beta; the tails (d + w^(beta-1)*M, xi) shrink to xi. Their images are
  // eventually constant, which the two cut-offs confirm.
  const Ordinal beta = ell(xi);
  if (!beta.is_finite()) throw std::domain_error("exponent of the last term must be finite");
  auto terms = xi.terms();
  terms.back().coefficient -= 1;
  if (terms.back().coefficient == 0) terms.pop_back();
  const Ordinal d = Ordinal::from_terms(std::move(terms));
  const Ordinal step = Ordinal::omega_pow(Ordinal::natural(beta.to_natural() - 1));
  auto tail_image = [&](const Natural& m) {
    return image_of_interval(add(add(d, mul_nat(step, m)), Ordinal(1)), xi);
  };
  const PointSet near = tail_image(Natural(1) << 32);
  const PointSet nearer = tail_image(Natural(1) << 64);
  if (near != nearer) throw std::logic_error("tail images did not stabilise at " + to_string(xi));
  return near;
}

std::vector<Ordinal> sample_points(const SymbolicDMap& f, std::size_t count, std::uint64_t seed) {
  const Tree& t = f.tree();
  std::vector<Ordinal> pts{Ordinal(), f.top()};
  auto push_near = [&](const Ordinal& p) {
    if (!(p < f.dom())) return;
    pts.push_back(p);
    for (std::uint64_t j = 1; j <= 2; ++j) {
      pts.push_back(add(p, Ordinal(j)));
      if (p.is_successor() && p.terms().back().coefficient >= j) {
        auto terms = p.terms();
        terms.back().coefficient -= j;
        if (terms.back().coefficient == 0) terms.pop_back();
        pts.push_back(Ordinal::from_terms(std::move(terms)));
      }
    }
  };
  for (Node x = 0; x < t.size(); ++x) {
    const Ordinal base = sub_left(f.least_preimage(x), f.block_top(x));
    pts.push_back(f.least_preimage(x));
    if (t.is_leaf(x)) continue;
    for (std::uint64_t m = 0; m <= 2; ++m)
      for (const auto& s : f.partial_sums(x))
        push_near(add(base, add(mul_nat(f.cycle_sum(x), m), s)));
  }
  for (std::size_t j = 0; j <= t.height(); ++j)
    push_near(Ordinal::omega_pow(Ordinal(j)));

  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  pts.erase(std::upper_bound(pts.begin(), pts.end(), f.top()), pts.end());

  std::mt19937_64 rng(seed);
  const std::size_t h = t.height();
  std::size_t guard = 0;
  while (h > 0 && pts.size() < count && guard++ < 100 * count) {
    const std::size_t k = std::uniform_int_distribution<std::size_t>(1, std::min<std::size_t>(h, 3))(rng);
    std::vector<std::uint64_t> exps;
    for (std::uint64_t e = 0; e < h; ++e) exps.push_back(e);
    std::shuffle(exps.begin(), exps.end(), rng);
    exps.resize(k);
    std::sort(exps.rbegin(), exps.rend());
    Ordinal p;
    for (auto e : exps) {
      Natural c = std::uniform_int_distribution<std::uint64_t>(1, 20)(rng);
      if (std::uniform_int_distribution<int>(0, 9)(rng) == 0)
        c += Natural(std::uniform_int_distribution<std::uint64_t>()(rng)) << 64;
      p = add(p, Ordinal::monomial(Ordinal(e), c));
    }
    const auto at = std::lower_bound(pts.begin(), pts.end(), p);
    if (at == pts.end() || !(*at == p)) pts.insert(at, std::move(p));
  }
  return pts;
}

namespace {

// Node set of the tree carrying phi, so the ordinal truth set is its preimage.
PointSet truth_nodes(const SymbolicDMap& f, const Valuation& v, const Formula& phi) {
  return model_check_tree(f.tree(), v, phi);
}

}  // namespace

bool holds_at_ordinal(const SymbolicDMap& f, const Valuation& v, const Formula& phi,
                      const Ordinal& xi) {
  auto rec = [&](const Formula& g) { return holds_at_ordinal(f, v, g, xi); };
  switch (phi.op()) {
    case Op::Top: return true;
    case Op::Bot: return false;
    case Op::Var: {
      const auto it = v.find(phi.name());
      return it != v.end() && contains(it->second, f.apply(xi));
    }
    case Op::Not: return !rec(phi.child());
    case Op::And: return rec(phi.lhs()) && rec(phi.rhs());
    case Op::Or: return rec(phi.lhs()) || rec(phi.rhs());
    case Op::Imp: return !rec(phi.lhs()) || rec(phi.rhs());
    case Op::Dia:
      return f.in_order_derivative(truth_nodes(f, v, phi.child()), xi);
    case Op::Box: {
      const PointSet all = full_set(f.tree().size());
      return !f.in_order_derivative(all & ~truth_nodes(f, v, phi.child()), xi);
    }
  }
  return false;
}

std::optional<OrdinalRefutation> refute_on_ordinal(const Formula& phi) {
  auto verdict = gl_decide(phi);
  if (verdict.provable) return std::nullopt;
  const Countermodel& m = *verdict.countermodel;
  const SymbolicDMap f(m.tree);
  const Ordinal xi = f.least_preimage(m.node);
  if (!(f.dom() < Ordinal::omega_pow(Ordinal::omega())))
    throw std::logic_error("d-map domain is not below w^w");
  if (holds_at_ordinal(f, m.valuation, phi, xi))
    throw std::logic_error("pulled back valuation does not refute " + print(phi) + " at " +
                           to_string(xi));
  return OrdinalRefutation{phi, m, f.dom(), xi};
}

}  // namespace provtop
