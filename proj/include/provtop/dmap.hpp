#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "provtop/formula.hpp"
#include "provtop/kripke.hpp"
#include "provtop/ordinal.hpp"

namespace provtop {

// Onto d-map from the ordinal w^h + 1 (order topology) onto a tree of height h (upsets).
//
// The block of a node x covers [0, top(x)] with top(x) = w^height(x). For an inner node
// with children c_0..c_{k-1}, Q = dom(c_0) + ... + dom(c_{k-1}) is one cycle, cycles repeat
// w times below top(x) = Q*w, and top(x) itself goes to x. Leaf blocks are single points;
// a tree that is a single point gets the whole of w^0+1 = {0, 1}.
class SymbolicDMap {
 public:
  explicit SymbolicDMap(Tree t);

  const Tree& tree() const noexcept { return tree_; }
  const Ordinal& dom() const { return dom_; }
  const Ordinal& top() const { return top_; }

  // Throws std::out_of_range when xi >= dom().
  Node apply(const Ordinal& xi) const;
  Ordinal least_preimage(Node t) const;

  // Nodes hit by apply on [a, b), b <= dom().
  PointSet image_of_interval(const Ordinal& a, const Ordinal& b) const;
  // Nodes hit arbitrarily close below xi (0 unless xi is a limit).
  PointSet limit_image(const Ordinal& xi) const;
  // xi is a limit point of the preimage of s in the order topology.
  bool in_order_derivative(PointSet s, const Ordinal& xi) const { return (limit_image(xi) & s) != 0; }

  const Ordinal& cycle_sum(Node x) const { return blocks_.at(x).cycle; }
  // s_0 = 0, s_{i+1} = s_i + dom(child i).
  const std::vector<Ordinal>& partial_sums(Node x) const { return blocks_.at(x).partial; }
  const Ordinal& block_top(Node x) const { return blocks_.at(x).top; }

 private:
  struct Block {
    Ordinal top, dom, cycle;
    std::vector<Ordinal> partial;
    PointSet below = 0;  // proper descendants
  };
  struct Position {
    Natural cycle;
    Ordinal offset;  // within the cycle, < Q
  };

  Position locate(Node x, const Ordinal& xi) const;
  PointSet image_in(Node x, const Ordinal& a, const Ordinal& b) const;
  PointSet image_in_cycle(Node x, const Ordinal& lo, const Ordinal& hi) const;

  Tree tree_;
  std::vector<Block> blocks_;
  Ordinal top_, dom_;
};

inline SymbolicDMap build_dmap(const Tree& t) { return SymbolicDMap(t); }

// Boundary-heavy deterministic sample of [0, top]: 0, the top, every block boundary of the
// first cycles of every node (with small offsets), w^j for j <= height, least preimages,
// then random points with occasional huge coefficients until `count` distinct points.
std::vector<Ordinal> sample_points(const SymbolicDMap& f, std::size_t count, std::uint64_t seed);

// Truth of f at xi under the pulled back valuation xi in v'(p) iff apply(xi) in v(p).
// Modal steps use in_order_derivative, i.e. the order topology on the ordinal.
bool holds_at_ordinal(const SymbolicDMap& f, const Valuation& v, const Formula& phi,
                      const Ordinal& xi);

struct OrdinalRefutation {
  Formula formula;
  Countermodel countermodel;
  Ordinal dom;
  Ordinal point;
};

// Empty when phi is GL-provable.
std::optional<OrdinalRefutation> refute_on_ordinal(const Formula& phi);

}  // namespace provtop
