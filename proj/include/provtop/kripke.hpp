#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "provtop/finite_space.hpp"
#include "provtop/formula.hpp"

namespace provtop {

using Node = std::size_t;

class TreeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Finite irreflexive tree; x sees every proper descendant.
class Tree {
 public:
  explicit Tree(std::vector<std::optional<Node>> parent);
  static Tree point();

  std::size_t size() const noexcept { return parent_.size(); }
  Node root() const noexcept { return root_; }
  std::optional<Node> parent(Node x) const { return parent_.at(x); }
  const std::vector<std::optional<Node>>& parents() const noexcept { return parent_; }
  const std::vector<Node>& children(Node x) const { return children_.at(x); }
  bool is_leaf(Node x) const { return children_.at(x).empty(); }
  std::vector<Node> leaves() const;
  std::size_t height() const { return height_.at(root_); }
  std::size_t height(Node x) const { return height_.at(x); }
  std::size_t depth(Node x) const;
  // Proper descendants of x, in preorder.
  std::vector<Node> descendants(Node x) const;
  bool sees(Node x, Node y) const;

  friend bool operator==(const Tree& a, const Tree& b) { return a.parent_ == b.parent_; }

 private:
  std::vector<std::optional<Node>> parent_;
  std::vector<std::vector<Node>> children_;
  std::vector<std::size_t> height_;
  Node root_ = 0;
};

// Root 0 with leaves w_i = i + 1.
Tree fork(std::size_t n);
// 0 < 1 < ... < n-1, node 0 the root.
Tree chain(std::size_t n);

// Replaces each keyed leaf by the root of its plugin. Base nodes keep their numbers; the
// remaining plugin nodes follow in key order.
Tree tree_dsum(const Tree& base, const std::map<Node, Tree>& plugins);

// AHU-style string, equal for isomorphic trees.
std::string canonical_form(const Tree& t);
// One representative per isomorphism class, canonically numbered (preorder, children sorted).
std::vector<Tree> all_trees(std::size_t n_nodes);
Tree canonical_tree(const Tree& t);
// Rebuilds t from point, fork and tree_dsum by pruning immediately after the root.
Tree reconstruct(const Tree& t);

FiniteSpace upset_space(const Tree& t);

// Kripke evaluation on the tree; all modality indices must be 0.
PointSet model_check_tree(const Tree& t, const Valuation& v, const Formula& f);

struct Countermodel {
  Tree tree;
  Valuation valuation;
  Node node = 0;
};

struct GlVerdict {
  bool provable = true;
  std::optional<Countermodel> countermodel;
};

struct GlOptions {
  bool minimize = true;
  std::size_t max_states = 2'000'000;  // gl3 search budget
};

GlVerdict gl_decide(const Formula& f, const GlOptions& options = {});
// Finite strict linear orders only.
GlVerdict gl3_decide(const Formula& f, const GlOptions& options = {});

// Drops leaves while the formula stays false at the refuting node.
Countermodel minimize_countermodel(const Countermodel& m, const Formula& f);

}  // namespace provtop
