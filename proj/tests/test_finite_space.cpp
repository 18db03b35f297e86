#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>

#include "provtop/finite_space.hpp"
#include "provtop/kripke.hpp"
#include "provtop/selftest.hpp"

using namespace provtop;

namespace {

using Pairs = std::vector<std::pair<std::size_t, std::size_t>>;

FiniteSpace fork2() { return upset_topology(3, Pairs{{0, 1}, {0, 2}}); }
FiniteSpace chain3() { return upset_topology(3, Pairs{{0, 1}, {0, 2}, {1, 2}}); }
FiniteSpace sierpinski() { return FiniteSpace(2, {0, 1, 3}); }

std::vector<PointSet> sorted(std::vector<PointSet> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// limit points straight from the definition, quantifying over every open
PointSet brute_d(const FiniteSpace& s, PointSet a) {
  PointSet out = 0;
  for (std::size_t x = 0; x < s.size(); ++x) {
    bool limit = true;
    for (PointSet u : s.opens())
      if (contains(u, x) && (u & a & ~bit(x)) == 0) limit = false;
    if (limit) out |= bit(x);
  }
  return out;
}

bool brute_scattered(const FiniteSpace& s) {
  // every nonempty subset has a point isolated in it
  for (PointSet a = 1; a <= s.points(); ++a) {
    bool found = false;
    for (std::size_t x : members(a))
      if (!contains(brute_d(s, a), x)) found = true;
    if (!found) return false;
  }
  return true;
}

bool brute_primal(const FiniteSpace& s) {
  for (std::size_t x = 0; x < s.size(); ++x)
    for (PointSet u : s.opens())
      for (PointSet v : s.opens())
        if (s.is_open(bit(x) | u | v) && !s.is_open(bit(x) | u) && !s.is_open(bit(x) | v))
          return false;
  return true;
}

std::vector<FiniteSpace> small_spaces() {
  std::vector<FiniteSpace> out;
  for (std::size_t n = 1; n <= 4; ++n)
    for (auto& s : all_topologies(n)) out.push_back(s);
  return out;
}

}  // namespace

TEST_CASE("from_subbase") {
  CHECK(from_subbase(2, std::vector<PointSet>{}).opens() == std::vector<PointSet>{0, 3});
  CHECK(from_subbase(2, std::vector<PointSet>{1}).opens() == std::vector<PointSet>{0, 1, 3});
  CHECK(sorted(from_subbase(3, std::vector<PointSet>{0b100, 0b110}).opens()) ==
        std::vector<PointSet>{0, 0b100, 0b110, 0b111});
  CHECK_THROWS_AS(from_subbase(2, std::vector<PointSet>{0b100}), SpaceError);
}

TEST_CASE("upset_topology") {
  CHECK(sorted(fork2().opens()) == std::vector<PointSet>{0, 0b010, 0b100, 0b110, 0b111});
  CHECK(upset_topology(1, Pairs{}) == FiniteSpace::discrete(1));
  CHECK(sorted(upset_topology(3, Pairs{{0, 1}, {1, 2}, {0, 2}}, OrderMode::Left).opens()) ==
        std::vector<PointSet>{0, 0b001, 0b011, 0b111});
  CHECK_THROWS_AS(upset_topology(2, Pairs{{0, 0}}), SpaceError);
  CHECK_THROWS_AS(upset_topology(3, Pairs{{0, 1}, {1, 2}}), SpaceError);
  CHECK_THROWS_AS(upset_topology(2, Pairs{{0, 1}, {1, 0}}), SpaceError);
}

TEST_CASE("constructor rejects non-topologies") {
  CHECK_THROWS_AS(FiniteSpace(2, {0, 1, 2}), SpaceError);  // no carrier
  CHECK_THROWS_AS(FiniteSpace(3, {0, 0b011, 0b110, 0b111}), SpaceError);  // no meet
  CHECK_THROWS_AS(FiniteSpace(2, {0, 1, 2, 3, 4}), SpaceError);
  CHECK(FiniteSpace(2, {3, 0, 1, 1}) == sierpinski());
}

TEST_CASE("derivative") {
  CHECK(derivative(sierpinski(), 0b01) == 0b10);
  CHECK(derivative(fork2(), 0) == 0);
  CHECK(derivative(fork2(), 0b111) == 0b001);
  for (const auto& s : small_spaces())
    for (PointSet a = 0; a <= s.points(); ++a) CHECK(derivative(s, a) == brute_d(s, a));
}

TEST_CASE("classify examples") {
  auto c = classify(upset_topology(3, Pairs{{0, 1}, {0, 2}, {1, 2}}));
  CHECK(c.scattered);
  CHECK(c.cb_rank == 3);
  CHECK(c.rank_of_point == std::vector<std::optional<std::size_t>>{2, 1, 0});
  CHECK(c.primal);

  auto ind = classify(FiniteSpace::indiscrete(2));
  CHECK_FALSE(ind.scattered);
  CHECK_FALSE(ind.magari);
  CHECK_FALSE(ind.rank_of_point[0].has_value());

  auto f = classify(fork2());
  CHECK(f.scattered);
  CHECK_FALSE(f.primal);
  CHECK(f.t_d);
  CHECK_FALSE(f.t1);

  Limits tight;
  tight.max_points_quadratic = 2;
  CHECK_THROWS_AS(classify(fork2(), tight), CapExceeded);
}

TEST_CASE("classify agrees with brute force and the structural laws") {
  auto corpus = space_corpus(99, 60);
  for (const auto& s : corpus) {
    auto r = classify(s);
    bool sc = brute_scattered(s);
    CHECK(r.scattered == sc);
    CHECK(r.magari == sc);
    if (sc) CHECK(r.t_d);
    CHECK(r.primal == brute_primal(s));
    // d of a Magari operator is idempotent-below
    if (r.magari)
      for (PointSet a = 0; a <= s.points(); ++a)
        CHECK(subset_of(derivative(s, derivative(s, a)), derivative(s, a)));
    // isolated points complement dX
    CHECK(isolated_points(s) == (s.points() & ~derivative(s, s.points())));
    // T_d: every derived set closed
    bool td = true;
    for (PointSet a = 0; a <= s.points(); ++a) td = td && s.is_closed(derivative(s, a));
    CHECK(r.t_d == td);
    if (sc && derivative(s, s.points()) != 0) CHECK_FALSE(s.is_open(derivative(s, s.points())));
  }
}

TEST_CASE("plus_topology") {
  CHECK(plus_topology(FiniteSpace::discrete(3)) == FiniteSpace::discrete(3));
  CHECK(plus_topology(fork2()) == FiniteSpace::discrete(3));
  CHECK(plus_topology(chain3()) == FiniteSpace::discrete(3));
  for (const auto& s : small_spaces()) {
    auto p = plus_topology(s);
    for (PointSet u : s.opens()) CHECK(p.is_open(u));
    for (PointSet a = 0; a <= s.points(); ++a) CHECK(p.is_open(derivative(s, a)));
    // T1 on a finite carrier
    if (classify(s).scattered) CHECK(p == FiniteSpace::discrete(s.size()));
  }
}

TEST_CASE("dsum") {
  std::map<std::size_t, FiniteSpace> points{{1, FiniteSpace::discrete(1)},
                                            {2, FiniteSpace::discrete(1)}};
  CHECK(dsum(fork2(), points).space == fork2());

  std::map<std::size_t, FiniteSpace> plug{{1, fork2()}, {2, FiniteSpace::discrete(1)}};
  DSum d = dsum(fork2(), plug);
  CHECK(d.space.size() == 5);
  Tree composite = tree_dsum(fork(2), {{1, fork(2)}});
  // relabel the composite tree space onto the dsum carrier and compare families
  auto tree_space = upset_space(composite);
  bool some_match = false;
  std::vector<std::size_t> perm{0, 1, 2, 3, 4};
  do {
    if (tree_space.relabel(perm) == d.space) some_match = true;
  } while (!some_match && std::next_permutation(perm.begin(), perm.end()));
  CHECK(some_match);
  // continuous and open; the fiber over w0 is the plugged fork, so not pointwise discrete
  CHECK(is_dmap(d.projection).failure == DMapCheck::Failure::NotPointwiseDiscrete);
  const auto base = fork2();
  for (PointSet u : base.opens()) CHECK(d.space.is_open(d.projection.preimage(u)));
  for (PointSet v : d.space.opens()) CHECK(fork2().is_open(d.projection.image(v)));
  CHECK(d.projection.image(d.space.points()) == fork2().points());
  std::map<std::size_t, FiniteSpace> discrete_plugs{{1, FiniteSpace::discrete(3)},
                                                    {2, FiniteSpace::discrete(2)}};
  CHECK(is_dmap(dsum(fork2(), discrete_plugs).projection).ok());

  CHECK_THROWS_AS(dsum(fork2(), {{0, fork2()}}), SpaceError);

  // brute open family: V u pi^-1(U), V open in the sum of the plugged spaces
  PointSet plugged = 0;
  for (auto [j, y] : plug) plugged |= PointSet(full_set(y.size()) << d.offsets[j]);
  std::set<PointSet> expected;
  for (PointSet u : base.opens())
    for (PointSet v = 0; v <= d.space.points(); ++v) {
      if (!subset_of(v, plugged)) continue;
      bool v_open = true;
      for (auto [j, y] : plug) v_open = v_open && y.is_open((v >> d.offsets[j]) & full_set(y.size()));
      if (v_open) expected.insert(v | d.projection.preimage(u));
    }
  std::set<PointSet> got(d.space.opens().begin(), d.space.opens().end());
  CHECK(got == expected);
}

TEST_CASE("is_dmap") {
  auto s = chain3();
  PointMap id{s, s, {0, 1, 2}};
  CHECK(is_dmap(id).ok());

  auto left = upset_topology(3, Pairs{{0, 1}, {0, 2}, {1, 2}}, OrderMode::Left);
  PointMap r = rank_map(s);
  CHECK(r.target == left);
  CHECK(r.assignment == std::vector<std::size_t>{2, 1, 0});
  CHECK(is_dmap(r).ok());

  PointMap to_point{sierpinski(), FiniteSpace::discrete(1), {0, 0}};
  auto check = is_dmap(to_point);
  CHECK(check.failure == DMapCheck::Failure::NotPointwiseDiscrete);
  CHECK(check.witness == 0b11);
  CHECK_FALSE(check.describe().empty());

  PointMap swap{sierpinski(), sierpinski(), {1, 0}};
  CHECK(is_dmap(swap).failure == DMapCheck::Failure::NotContinuous);
}

TEST_CASE("rank_map") {
  auto one = rank_map(FiniteSpace::discrete(1));
  CHECK(one.assignment == std::vector<std::size_t>{0});
  auto f = rank_map(fork2());
  CHECK(f.assignment == std::vector<std::size_t>{1, 0, 0});
  CHECK(f.target.size() == 2);
  CHECK_THROWS_AS(rank_map(FiniteSpace::indiscrete(2)), SpaceError);
}

TEST_CASE("d-maps preserve derivatives and ranks") {
  // random small trees and their leaf-collapsing maps onto smaller trees via rank maps
  for (const auto& s : small_spaces()) {
    if (!classify(s).scattered) continue;
    PointMap r = rank_map(s);
    REQUIRE(is_dmap(r).ok());
    for (PointSet a = 0; a <= r.target.points(); ++a)
      CHECK(r.preimage(derivative(r.target, a)) == derivative(s, r.preimage(a)));
    auto rs = classify(s).rank_of_point;
    auto rt = classify(r.target).rank_of_point;
    for (std::size_t x = 0; x < s.size(); ++x) CHECK(rs[x] == rt[r.assignment[x]]);
  }
}

TEST_CASE("glued d-maps are d-maps") {
  // f: fork(2) -> chain(2) collapsing leaves; plug fibers with rank maps of trees
  std::mt19937_64 rng(17);
  auto trees3 = all_trees(3);
  auto trees2 = all_trees(2);
  auto base = upset_space(fork(2));
  auto target = upset_space(chain(2));
  PointMap f{base, target, {0, 1, 1}};
  REQUIRE(is_dmap(f).ok());
  for (int round = 0; round < 20; ++round) {
    const Tree& a = trees3[rng() % trees3.size()];
    const Tree& b = trees3[rng() % trees3.size()];
    auto ya = upset_space(a), yb = upset_space(b);
    // each Y_j maps onto the chain of its rank; the target plugin is that chain if equal
    auto ra = rank_map(ya), rb = rank_map(yb);
    if (ra.target != rb.target) continue;
    DSum src = dsum(base, {{1, ya}, {2, yb}});
    DSum dst = dsum(target, {{1, ra.target}});
    std::vector<std::size_t> g(src.space.size());
    g[0] = 0;
    for (std::size_t i = 0; i < ya.size(); ++i) g[src.offsets[1] + i] = dst.offsets[1] + ra.assignment[i];
    for (std::size_t i = 0; i < yb.size(); ++i) g[src.offsets[2] + i] = dst.offsets[1] + rb.assignment[i];
    PointMap glued{src.space, dst.space, g};
    CHECK(is_dmap(glued).ok());
    CHECK(glued.image(src.space.points()) == dst.space.points());
  }
  (void)trees2;
}

TEST_CASE("reflexive points") {
  CHECK(reflexive_points(FiniteSpace::discrete(1), 1) == 0);
  CHECK_THROWS_AS(reflexive_points(FiniteSpace::indiscrete(2), 1), SpaceError);
  for (const auto& s : small_spaces()) {
    if (!classify(s).scattered) continue;
    auto p = plus_topology(s);
    CHECK(reflexive_points(s, 2) == derivative(p, p.points()));
    CHECK(reflexive_points(s, 2) == 0);
  }
  // non-scattered T_d spaces have reflexive points
  for (const auto& s : all_topologies(4)) {
    auto r = classify(s);
    if (!r.t_d || r.scattered) continue;
    PointSet two = reflexive_points(s, 2);
    for (std::size_t m = 1; m <= 3; ++m) CHECK(subset_of(two, reflexive_points(s, m)));
  }
}

TEST_CASE("check_glp_space") {
  for (const auto& s : small_spaces()) {
    if (!classify(s).scattered) continue;
    std::vector<FiniteSpace> seq{s, plus_topology(s)};
    CHECK(check_glp_space(seq).ok());
  }
  std::vector<FiniteSpace> disc{FiniteSpace::discrete(3), FiniteSpace::discrete(3)};
  CHECK(check_glp_space(disc).ok());

  std::vector<FiniteSpace> same{fork2(), fork2()};
  auto r = check_glp_space(same);
  CHECK_FALSE(r.ok());
  CHECK_FALSE(r.pairs[0].derived_sets_open);
  REQUIRE(r.pairs[0].d1_witness.has_value());
  CHECK(derivative(fork2(), *r.pairs[0].d1_witness) == 0b001);

  std::vector<FiniteSpace> mismatch{fork2(), FiniteSpace::discrete(2)};
  CHECK_THROWS_AS(check_glp_space(mismatch), SpaceError);
}

TEST_CASE("topology_from_operator") {
  std::vector<PointSet> trivial{0, 0};
  CHECK(topology_from_operator(1, trivial) == FiniteSpace::discrete(1));

  auto s = chain3();
  std::vector<PointSet> table(8);
  for (PointSet a = 0; a < 8; ++a) table[a] = derivative(s, a);
  CHECK(topology_from_operator(3, table) == s);

  std::vector<PointSet> bad{0, 3, 3, 3};
  try {
    topology_from_operator(2, bad);
    FAIL("accepted");
  } catch (const MagariViolation& e) {
    CHECK(e.axiom() == "M2");
  }
  for (const auto& sp : small_spaces()) {
    if (!classify(sp).scattered) continue;
    std::vector<PointSet> t(std::size_t{1} << sp.size());
    for (PointSet a = 0; a < t.size(); ++a) t[a] = derivative(sp, a);
    CHECK(topology_from_operator(sp.size(), t) == sp);
  }
}

TEST_CASE("model_check") {
  Valuation none;
  CHECK(model_check(fork2(), none, parse("T")) == 0b111);
  CHECK(model_check(fork2(), none, parse("<0>T")) == 0b001);
  CHECK(model_check(chain3(), none, parse("<0><0>T")) == 0b001);
  CHECK(model_check(chain3(), {{"p", 0b100}}, parse("<0>p & ~p")) == 0b011);
  std::vector<FiniteSpace> two{fork2(), FiniteSpace::discrete(3)};
  CHECK(model_check(two, none, parse("<1>T")) == 0);
}

TEST_CASE("validates") {
  Formula p = Formula::var("p"), q = Formula::var("q");
  for (const auto& s : small_spaces())
    if (classify(s).scattered) CHECK(validates(s, formulas::lob(p)).valid);

  auto v = validates(fork2(), formulas::lin(p, q));
  CHECK_FALSE(v.valid);
  CHECK(v.point == 0);
  CHECK(model_check(fork2(), v.countervaluation, formulas::lin(p, q)) != fork2().points());
  std::set<PointSet> pq{v.countervaluation["p"], v.countervaluation["q"]};
  CHECK(pq == std::set<PointSet>{0b010, 0b100});

  CHECK(validates(chain3(), formulas::lin(p, q)).valid);
  for (const auto& s : small_spaces()) {
    auto r = classify(s);
    bool lin = validates(s, formulas::lin(p, q)).valid;
    if (r.scattered) {
      CHECK(lin == r.primal);
      CHECK(validates(s, formulas::dot3(p, q)).valid == lin);
    }
  }
}
