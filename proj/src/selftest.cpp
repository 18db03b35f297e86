#include "provtop/selftest.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "provtop/dmap.hpp"
#include "provtop/icard.hpp"
#include "provtop/kripke.hpp"
#include "provtop/ordinal.hpp"

namespace provtop {

namespace {

class Tally {
 public:
  void check(bool ok, const std::string& what) {
    ++checked_;
    if (ok) return;
    if (failures_++ == 0) first_ = what;
  }
  bool ok() const { return failures_ == 0; }
  std::size_t checked() const { return checked_; }
  std::string summary() const {
    std::ostringstream os;
    os << checked_ << " checks, " << failures_ << " failures";
    if (failures_ > 0) os << "; first: " << first_;
    return os.str();
  }

 private:
  std::size_t checked_ = 0;
  std::size_t failures_ = 0;
  std::string first_;
};

std::string show(PointSet s) {
  std::string out = "{";
  for (std::size_t x : members(s)) out += (out.size() > 1 ? "," : "") + std::to_string(x);
  return out + "}";
}

std::string show(const FiniteSpace& s) {
  std::string out = std::to_string(s.size()) + " points, opens [";
  for (PointSet u : s.opens()) out += show(u);
  return out + "]";
}

FiniteSpace space_from_up_sets(std::size_t n, const std::vector<PointSet>& up) {
  std::vector<PointSet> opens;
  for (PointSet u = 0; u <= full_set(n); ++u) {
    bool open = true;
    for (std::size_t x : members(u)) open = open && subset_of(up[x], u);
    if (open) opens.push_back(u);
    if (u == full_set(n)) break;
  }
  return FiniteSpace(n, std::move(opens));
}

// Derivative computed from the open sets alone.
std::vector<PointSet> derivative_table(const FiniteSpace& s) {
  const std::size_t total = std::size_t{1} << s.size();
  std::vector<PointSet> d(total, 0);
  for (std::size_t a = 0; a < total; ++a) {
    for (std::size_t x = 0; x < s.size(); ++x) {
      bool limit = true;
      for (PointSet u : s.opens())
        if (contains(u, x) && (u & static_cast<PointSet>(a) & ~bit(x)) == 0) limit = false;
      if (limit) d[a] |= bit(x);
    }
  }
  return d;
}

// Every nonempty subset has a point isolated in it.
bool scattered_by_subsets(const FiniteSpace& s) {
  for (PointSet a = 1; a <= s.points(); ++a) {
    bool found = false;
    for (std::size_t x : members(a))
      for (PointSet u : s.opens())
        if ((u & a) == bit(x)) found = true;
    if (!found) return false;
    if (a == s.points()) break;
  }
  return true;
}

bool lin_by_scan(const FiniteSpace& s, const std::vector<PointSet>& d) {
  const PointSet all = s.points();
  auto box = [&](PointSet a) { return all & ~d[all & ~a]; };
  for (PointSet p = 0; p <= all; ++p) {
    for (PointSet q = 0; q <= all; ++q) {
      const PointSet lhs = box((p & box(p)) | (q & box(q)));
      if (!subset_of(lhs, box(p) | box(q))) return false;
      if (q == all) break;
    }
    if (p == all) break;
  }
  return true;
}

bool dot3_by_scan(const FiniteSpace& s, const std::vector<PointSet>& d) {
  const PointSet all = s.points();
  for (PointSet p = 0; p <= all; ++p) {
    for (PointSet q = 0; q <= all; ++q) {
      const PointSet lhs = d[p] & d[q];
      const PointSet rhs = d[p & q] | d[p & d[q]] | d[d[p] & q];
      if (!subset_of(lhs, rhs)) return false;
      if (q == all) break;
    }
    if (p == all) break;
  }
  return true;
}

PointSet doubly_reflexive_by_scan(const FiniteSpace& s, const std::vector<PointSet>& d) {
  const PointSet all = s.points();
  PointSet out = 0;
  for (std::size_t x : members(d[all])) {
    bool ok = true;
    for (PointSet a = 0; a <= all && ok; ++a) {
      for (PointSet b = 0; b <= all && ok; ++b) {
        const PointSet m = d[a] & d[b];
        if (contains(m, x) && !contains(d[m], x)) ok = false;
        if (b == all) break;
      }
      if (a == all) break;
    }
    if (ok) out |= bit(x);
  }
  return out;
}

// Kripke evaluation on a tree given by parent links, without the library evaluator.
PointSet kripke_eval(const std::vector<PointSet>& below, PointSet all,
                     const std::map<std::string, PointSet>& v, const Formula& f) {
  auto rec = [&](const Formula& g) { return kripke_eval(below, all, v, g); };
  switch (f.op()) {
    case Op::Top: return all;
    case Op::Bot: return 0;
    case Op::Var: {
      auto it = v.find(f.name());
      return it == v.end() ? 0 : it->second;
    }
    case Op::Not: return all & ~rec(f.child());
    case Op::And: return rec(f.lhs()) & rec(f.rhs());
    case Op::Or: return rec(f.lhs()) | rec(f.rhs());
    case Op::Imp: return (all & ~rec(f.lhs())) | rec(f.rhs());
    case Op::Dia:
    case Op::Box: {
      const PointSet s = rec(f.child());
      PointSet out = 0;
      for (std::size_t x = 0; x < below.size(); ++x) {
        const bool hit = f.op() == Op::Dia ? (below[x] & s) != 0 : subset_of(below[x], s);
        if (hit) out |= bit(x);
      }
      return out;
    }
  }
  return 0;
}

std::vector<PointSet> strict_successors(const std::vector<std::optional<Node>>& parent) {
  std::vector<PointSet> below(parent.size(), 0);
  for (std::size_t y = 0; y < parent.size(); ++y)
    for (auto p = parent[y]; p; p = parent[*p]) below[*p] |= bit(y);
  return below;
}

bool refuted_by(const Countermodel& m, const Formula& f) {
  const auto below = strict_successors(m.tree.parents());
  return !contains(kripke_eval(below, full_set(m.tree.size()), m.valuation, f), m.node);
}

// Some tree with at most max_nodes nodes and some valuation falsify f somewhere.
bool refutable_on_small_trees(const Formula& f, std::size_t max_nodes) {
  const auto var_set = variables(f);
  const std::vector<std::string> vars(var_set.begin(), var_set.end());
  for (std::size_t n = 1; n <= max_nodes; ++n) {
    for (const Tree& t : all_trees(n)) {
      const auto below = strict_successors(t.parents());
      const PointSet all = full_set(n);
      const std::uint64_t combos = std::uint64_t{1} << (n * vars.size());
      std::map<std::string, PointSet> v;
      for (std::uint64_t c = 0; c < combos; ++c) {
        for (std::size_t i = 0; i < vars.size(); ++i) v[vars[i]] = static_cast<PointSet>((c >> (i * n)) & all);
        if (kripke_eval(below, all, v, f) != all) return true;
      }
    }
  }
  return false;
}

Word word_from_index(std::size_t len, std::size_t code, std::size_t base) {
  Word w;
  for (std::size_t i = 0; i < len; ++i) {
    w.indices.push_back(static_cast<Modality>(code % base));
    code /= base;
  }
  return w;
}

std::vector<Word> all_words(std::size_t max_len, std::size_t max_index) {
  std::vector<Word> out;
  const std::size_t base = max_index + 1;
  std::size_t count = 1;
  for (std::size_t len = 0; len <= max_len; ++len, count *= base)
    for (std::size_t code = 0; code < count; ++code) out.push_back(word_from_index(len, code, base));
  return out;
}

Word random_word(std::mt19937_64& rng, std::size_t max_len, Modality max_index) {
  Word w;
  const auto len = std::uniform_int_distribution<std::size_t>(0, max_len)(rng);
  for (std::size_t i = 0; i < len; ++i)
    w.indices.push_back(std::uniform_int_distribution<Modality>(0, max_index)(rng));
  return w;
}

// 1. scattered <=> Magari, against the subset definition of scatteredness.
CriterionResult simmons_esakia(const SelftestOptions& o) {
  Tally t;
  t.check(all_topologies_by_families(4).size() == 355, "355 topologies on 4 points (families)");
  t.check(all_topologies(4).size() == 355, "355 topologies on 4 points (preorders)");
  std::size_t scattered = 0;
  const auto corpus = space_corpus(o.seed, o.random_spaces);
  for (const auto& s : corpus) {
    const auto r = classify(s);
    const bool oracle = scattered_by_subsets(s);
    scattered += oracle;
    t.check(r.scattered == r.magari && r.scattered == oracle,
            "scattered/magari/oracle disagree on " + show(s));
  }
  return {1, "", t.ok(), t.summary() + " over " + std::to_string(corpus.size()) + " spaces (" +
                             std::to_string(scattered) + " scattered)"};
}

// 2. primal <=> (lin) <=> (.3) on scattered corpus spaces.
CriterionResult linearity(const SelftestOptions& o) {
  Tally t;
  const Formula p = Formula::var("p"), q = Formula::var("q");
  const Formula lin = formulas::lin(p, q), dot3 = formulas::dot3(p, q);
  std::size_t primal = 0, used = 0;
  for (const auto& s : space_corpus(o.seed, o.random_spaces)) {
    const auto r = classify(s);
    if (!r.scattered) continue;
    ++used;
    const auto d = derivative_table(s);
    const bool v_lin = validates(s, lin).valid;
    const bool v_dot3 = validates(s, dot3).valid;
    const bool o_lin = lin_by_scan(s, d);
    const bool o_dot3 = dot3_by_scan(s, d);
    primal += r.primal;
    t.check(r.primal == v_lin && v_lin == v_dot3 && v_lin == o_lin && o_lin == o_dot3,
            "linearity chain breaks on " + show(s));
  }
  return {2, "", t.ok(), t.summary() + " over " + std::to_string(used) + " scattered spaces (" +
                             std::to_string(primal) + " primal)"};
}

// 3. laws of the derived topology.
CriterionResult plus_laws(const SelftestOptions& o) {
  Tally t;
  std::size_t used = 0;
  for (const auto& s : space_corpus(o.seed, o.random_spaces)) {
    if (!classify(s).scattered) continue;
    ++used;
    try {
      const FiniteSpace plus = plus_topology(s);
      t.check(classify(plus).t1, "plus topology not T1 on " + show(s));
      t.check(plus == FiniteSpace::discrete(s.size()), "plus topology not discrete on " + show(s));
      bool refines = true;
      for (PointSet u : s.opens()) refines = refines && plus.is_open(u);
      t.check(refines, "plus topology does not refine " + show(s));
      const std::vector<FiniteSpace> pair{s, plus};
      t.check(check_glp_space(pair).ok(), "(tau, tau+) is not a GLP-space for " + show(s));
      const PointSet dx = derivative(s, s.points());
      t.check(dx == 0 || !s.is_open(dx), "d(X) open in " + show(s));
    } catch (const std::exception& e) {
      t.check(false, std::string("exception: ") + e.what());
    }
  }
  return {3, "", t.ok(), t.summary() + " over " + std::to_string(used) + " scattered spaces"};
}

// 4. doubly reflexive points are the limit points of tau+; Cor. d-plus on T_d spaces.
CriterionResult reflection(const SelftestOptions& o) {
  Tally t;
  std::size_t used = 0;
  for (const auto& s : space_corpus(o.seed, o.random_spaces)) {
    if (!classify(s).t_d) continue;
    ++used;
    const auto d = derivative_table(s);
    const PointSet refl = reflexive_points(s, 2);
    const PointSet limits = derivative(plus_topology(s), s.points());
    t.check(refl == limits && refl == doubly_reflexive_by_scan(s, d),
            "doubly reflexive points differ on " + show(s));
  }

  const std::size_t expected_t0[] = {0, 1, 3, 19, 219, 4231, 130023};
  std::size_t dplus_spaces = 0;
  for (std::size_t n = 1; n <= 6; ++n) {
    std::size_t t0 = 0;
    for (const auto& s : all_topologies(n)) {
      bool distinct = true;
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = x + 1; y < n; ++y)
          distinct = distinct && s.neighbourhood(x) != s.neighbourhood(y);
      if (!distinct) continue;  // T_d = T_0 for finite spaces
      ++t0;
      const PointSet all = s.points();
      const std::size_t total = std::size_t{1} << n;
      std::vector<PointSet> d(total), dplus(total);
      const FiniteSpace plus = plus_topology(s);
      for (std::size_t a = 0; a < total; ++a) {
        d[a] = derivative(s, static_cast<PointSet>(a));
        dplus[a] = derivative(plus, static_cast<PointSet>(a));
      }
      std::vector<PointSet> derived(d);
      std::sort(derived.begin(), derived.end());
      derived.erase(std::unique(derived.begin(), derived.end()), derived.end());
      PointSet doubly = 0;
      for (std::size_t x : members(d[all])) {
        bool ok = true;
        for (PointSet a : derived)
          for (PointSet b : derived)
            if (contains(a & b, x) && !contains(d[a & b], x)) ok = false;
        if (ok) doubly |= bit(x);
      }
      for (std::size_t a = 0; a < total; ++a) {
        PointSet reflects = all;
        for (std::size_t b = 0; b < total; ++b)
          reflects &= (all & ~d[b]) | d[static_cast<PointSet>(a) & d[b]];
        t.check(dplus[a] == (doubly & reflects),
                "d-plus characterisation fails on " + show(s) + " at A=" + show(static_cast<PointSet>(a)));
      }
    }
    t.check(t0 == expected_t0[n], "T_0 count on " + std::to_string(n) + " points is " + std::to_string(t0));
    dplus_spaces += t0;
  }
  return {4, "", t.ok(), t.summary() + " over " + std::to_string(used) + " T_d corpus spaces and " +
                             std::to_string(dplus_spaces) + " T_d spaces on <= 6 points"};
}

// 5. GL decision procedure against tree countermodels and exhaustive small-tree search.
CriterionResult gl_decision(const SelftestOptions& o) {
  Tally t;
  const Formula p = Formula::var("p"), q = Formula::var("q");
  std::vector<Formula> provable{
      formulas::k_axiom(p, q),                                       // L1
      Formula::imp(Formula::box(0, p), Formula::box(0, Formula::box(0, p))),  // L2
      formulas::lob(p),                                              // L3
      formulas::transitivity(p)};
  std::vector<Formula> refutable{parse("<0>T"), parse("p -> [0]p"), formulas::dot3(p, q)};

  auto check_verdict = [&](const Formula& f, std::optional<bool> expect) {
    const GlVerdict v = gl_decide(f);
    if (expect) t.check(v.provable == *expect, "wrong verdict for " + print(f));
    if (v.provable) {
      t.check(!refutable_on_small_trees(f, 5), "provable but refuted on a small tree: " + print(f));
      t.check(gl3_decide(f).provable, "GL theorem not a GL.3 theorem: " + print(f));
    } else {
      t.check(v.countermodel && refuted_by(*v.countermodel, f),
              "countermodel does not verify for " + print(f));
    }
    return v.provable;
  };
  for (const auto& f : provable) check_verdict(f, true);
  for (const auto& f : refutable) check_verdict(f, false);

  std::mt19937_64 rng(o.seed);
  const std::vector<std::string> vars{"p", "q", "r"};
  std::size_t proved = 0;
  const std::size_t axioms = o.random_formulas / 4;
  for (std::size_t i = 0; i < o.random_formulas; ++i) {
    Formula f;
    if (i < o.random_formulas - axioms) {
      f = random_formula(rng, vars, 3, 12);
    } else {
      const Formula a = random_formula(rng, vars, 1, 4), b = random_formula(rng, vars, 1, 4);
      switch (i % 4) {
        case 0: f = formulas::k_axiom(a, b); break;
        case 1: f = Formula::imp(Formula::box(0, a), Formula::box(0, Formula::box(0, a))); break;
        case 2: f = formulas::lob(a); break;
        default: f = formulas::transitivity(a); break;
      }
    }
    proved += check_verdict(f, std::nullopt);
  }
  return {5, "", t.ok(), t.summary() + "; " + std::to_string(proved) + " of " +
                             std::to_string(o.random_formulas) + " random formulas provable"};
}

// 6. the symbolic d-maps onto trees.
CriterionResult abashidze_blass(const SelftestOptions& o) {
  Tally t;
  std::size_t trees = 0, points = 0;
  for (std::size_t n = 1; n <= 6; ++n) {
    for (const Tree& tree : all_trees(n)) {
      ++trees;
      const SymbolicDMap f(tree);
      const std::size_t h = tree.height();
      t.check(f.dom() == add(omega_pow(Ordinal(h)), Ordinal(1)),
              "dom is not w^h+1 for " + canonical_form(tree));
      const auto below = strict_successors(tree.parents());
      for (Node x = 0; x < n; ++x)
        t.check(f.apply(f.least_preimage(x)) == x, "least preimage misses node in " + canonical_form(tree));
      const auto pts = sample_points(f, o.samples, o.seed + n);
      t.check(h == 0 || pts.size() >= o.samples, "too few samples for " + canonical_form(tree));
      for (const auto& xi : pts) {
        ++points;
        const Node y = f.apply(xi);
        t.check(ell(xi) == Ordinal(tree.height(y)),
                "rank mismatch at " + to_string(xi) + " in " + canonical_form(tree));
        for (std::size_t k = 0; k <= h; ++k)
          t.check((Ordinal(k) <= ell(xi)) == (tree.height(y) >= k),
                  "CB level mismatch at " + to_string(xi));
        // d-map condition at xi: the nodes hit arbitrarily close below xi are exactly
        // the successors of f(xi).
        t.check(f.limit_image(xi) == below[y],
                "derivative does not commute at " + to_string(xi) + " in " + canonical_form(tree));
      }
    }
  }
  for (std::size_t n = 1; n <= 6; ++n) {
    const SymbolicDMap f(fork(n));
    for (std::uint64_t k = 0; k <= 100; ++k)
      t.check(f.apply(Ordinal(k)) == k % n + 1, "fork law fails at " + std::to_string(k));
    t.check(f.apply(Ordinal::omega()) == 0, "fork top is not the root");
  }
  for (std::uint64_t n = 0; n <= 5; ++n) {
    // w^n+1 summed along w+1: w many blocks, then one point at the limit.
    const Ordinal block = add(omega_pow(Ordinal(n)), Ordinal(1));
    const Ordinal sum = add(times_omega(block), Ordinal(1));
    t.check(sum == add(omega_pow(Ordinal(n + 1)), Ordinal(1)), "ordinal sum identity fails at n=" + std::to_string(n));
    for (std::uint64_t m : {1ull, 2ull, 1000ull, 1ull << 40})
      t.check(mul_nat(block, m) < times_omega(block), "partial sum reaches the limit");
    // Every point below w^(n+1) lies below some partial sum.
    for (const Ordinal& xi : {omega_pow(Ordinal(n)), mul_nat(block, 7), add(mul_nat(omega_pow(Ordinal(n)), 12345), Ordinal(9))})
      t.check(xi < mul_nat(block, xi.coefficient_of(Ordinal(n)) + 1), "partial sums not cofinal");
    t.check(SymbolicDMap(chain(n + 2)).dom() == sum, "chain d-map domain differs at n=" + std::to_string(n));
  }
  return {6, "", t.ok(), t.summary() + " over " + std::to_string(trees) + " trees, " +
                             std::to_string(points) + " sampled points"};
}

// 7. Icard word fragment.
CriterionResult icard_words(const SelftestOptions& o) {
  Tally t;
  const auto short_words = all_words(4, 2);
  std::size_t pairs = 0;
  for (const Word& a : short_words) {
    for (const Word& b : short_words) {
      ++pairs;
      try {
        trichotomy(a, b);
        t.check(true, "");
      } catch (const std::logic_error& e) {
        t.check(false, e.what());
      }
    }
  }
  const auto words = all_words(5, 2);
  for (const Word& w : words) {
    const Ordinal m = min_word(w);
    t.check(eval_word(w, m), "word false at its minimum: " + print(w));
    for (const Ordinal& below : below_candidates(m))
      t.check(!eval_word(w, below), "word " + print(w) + " true below its minimum at " + to_string(below));
  }
  std::mt19937_64 rng(o.seed);
  for (std::size_t i = 0; i < 1000; ++i) {
    const Word w = random_word(rng, 5, 2);
    const Ordinal a = random_ordinal(rng, 3);
    t.check(eval_word(shift_up(w), a) == eval_word(w, ell(a)),
            "shift law fails for " + print(w) + " at " + to_string(a));
  }
  t.check(min_word(parse_word("<1>T")) == Ordinal::omega(), "min <1>T is not w");
  t.check(min_word(parse_word("<2>T")) == omega_pow(Ordinal::omega()), "min <2>T is not w^w");
  return {7, "", t.ok(), t.summary() + "; " + std::to_string(pairs) + " word pairs, " +
                             std::to_string(words.size()) + " words minimised"};
}

// 8. single-index word implications against the GL decision procedure.
CriterionResult cross_oracle(const SelftestOptions&) {
  Tally t;
  const auto words = all_words(6, 0);
  for (const Word& a : words)
    for (const Word& b : words)
      t.check(word_entails(a, b) == gl_decide(Formula::imp(a.to_formula(), b.to_formula())).provable,
              "entailment differs for " + print(a) + " -> " + print(b));
  return {8, "", t.ok(), t.summary()};
}

// 9. ordinal arithmetic laws.
CriterionResult ordinal_laws(const SelftestOptions& o) {
  Tally t;
  std::mt19937_64 rng(o.seed);
  for (std::size_t i = 0; i < 10000; ++i) {
    const Ordinal a = random_ordinal(rng, 3), b = random_ordinal(rng, 3), c = random_ordinal(rng, 3);
    const int rel = (a < b) + (a == b) + (a > b);
    t.check(rel == 1 && ((a < b) == (b > a)), "trichotomy fails");
    if (a <= b && b <= c) t.check(a <= c, "transitivity fails");
    t.check(add(add(a, b), c) == add(a, add(b, c)), "associativity fails");
    t.check(add(a, Ordinal()) == a && add(Ordinal(), a) == a, "zero is not neutral");
    t.check(a <= add(a, b), "a > a + b");
    if (b < c) t.check(add(a, b) < add(a, c), "addition not strictly monotone on the right");
    const Ordinal& lo = std::min(a, b);
    const Ordinal& hi = std::max(a, b);
    t.check(add(lo, sub_left(hi, lo)) == hi, "sub_left round trip fails");
    t.check(ell(add(c, omega_pow(b))) == b, "ell(c + w^b) != b for b=" + to_string(b));
    t.check(ell(a) <= a.leading_exponent(), "ell exceeds the leading exponent");
    t.check(parse_ordinal(to_string(a)) == a, "text round trip fails for " + to_string(a));
    const std::size_t m = i % 3;
    t.check(in_U(a, m + 1, b) == in_U(ell(a), m, b), "U^m shift law fails");
  }
  return {9, "", t.ok(), t.summary()};
}

}  // namespace

std::vector<FiniteSpace> all_topologies(std::size_t n) {
  if (n > 6) throw CapExceeded("topology enumeration is limited to 6 points");
  // up[x] = points above or equal to x; extend preorders one point at a time.
  std::vector<std::vector<PointSet>> preorders{{}};
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<std::vector<PointSet>> next;
    const PointSet old = full_set(k);
    for (const auto& up : preorders) {
      for (PointSet down = 0; down <= old; ++down) {
        bool closed = true;  // down must be down-closed
        for (std::size_t y : members(down))
          for (std::size_t x = 0; x < k; ++x)
            if (contains(up[x], y) && !contains(down, x)) closed = false;
        if (closed) {
          for (PointSet upper = 0; upper <= old; ++upper) {
            bool ok = true;
            for (std::size_t y : members(upper)) ok = ok && subset_of(up[y], upper);
            for (std::size_t d : members(down)) ok = ok && subset_of(upper, up[d]);
            if (ok) {
              auto ext = up;
              for (std::size_t d : members(down)) ext[d] |= bit(k);
              ext.push_back(bit(k) | upper);
              next.push_back(std::move(ext));
            }
            if (upper == old) break;
          }
        }
        if (down == old) break;
      }
    }
    preorders = std::move(next);
  }
  std::vector<FiniteSpace> out;
  out.reserve(preorders.size());
  for (const auto& up : preorders) out.push_back(space_from_up_sets(n, up));
  return out;
}

std::vector<FiniteSpace> all_topologies_by_families(std::size_t n) {
  if (n > 4) throw CapExceeded("family enumeration is limited to 4 points");
  const PointSet all = full_set(n);
  std::vector<PointSet> middle;
  for (PointSet u = 1; u < all; ++u) middle.push_back(u);
  std::vector<FiniteSpace> out;
  const std::uint64_t families = std::uint64_t{1} << middle.size();
  for (std::uint64_t f = 0; f < families; ++f) {
    std::vector<PointSet> fam{0, all};
    for (std::size_t i = 0; i < middle.size(); ++i)
      if ((f >> i) & 1u) fam.push_back(middle[i]);
    bool closed = true;
    for (PointSet a : fam)
      for (PointSet b : fam)
        closed = closed && std::find(fam.begin(), fam.end(), a | b) != fam.end() &&
                 std::find(fam.begin(), fam.end(), a & b) != fam.end();
    if (closed) out.emplace_back(n, std::move(fam));
  }
  return out;
}

std::vector<FiniteSpace> space_corpus(std::uint64_t seed, std::size_t random_count) {
  std::vector<FiniteSpace> out;
  for (std::size_t n = 1; n <= 4; ++n) {
    auto all = all_topologies_by_families(n);
    out.insert(out.end(), all.begin(), all.end());
  }
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < random_count; ++i) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(5, 7)(rng);
    if (i % 2 == 0) {
      // random strict order: random forward edges, transitively closed
      const double density = std::uniform_real_distribution<double>(0.1, 0.6)(rng);
      std::vector<PointSet> above(n, 0);
      for (std::size_t x = n; x-- > 0;)
        for (std::size_t y = x + 1; y < n; ++y)
          if (std::bernoulli_distribution(density)(rng)) above[x] |= bit(y) | above[y];
      std::vector<std::pair<std::size_t, std::size_t>> order;
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y : members(above[x])) order.emplace_back(x, y);
      std::vector<std::size_t> perm(n);
      for (std::size_t x = 0; x < n; ++x) perm[x] = x;
      std::shuffle(perm.begin(), perm.end(), rng);
      out.push_back(upset_topology(n, order).relabel(perm));
    } else {
      const std::size_t k = std::uniform_int_distribution<std::size_t>(1, 2 * n)(rng);
      std::vector<PointSet> sub;
      for (std::size_t j = 0; j < k; ++j)
        sub.push_back(std::uniform_int_distribution<PointSet>(0, full_set(n))(rng));
      out.push_back(from_subbase(n, sub));
    }
  }
  return out;
}

Formula random_formula(std::mt19937_64& rng, const std::vector<std::string>& vars,
                       std::size_t depth, std::size_t size_budget) {
  auto pick = [&](int hi) { return std::uniform_int_distribution<int>(0, hi)(rng); };
  if (size_budget <= 1 || pick(9) < 2) {
    const int r = pick(static_cast<int>(vars.size()) + 1);
    if (r < static_cast<int>(vars.size())) return Formula::var(vars[static_cast<std::size_t>(r)]);
    return r == static_cast<int>(vars.size()) ? Formula::top() : Formula::bot();
  }
  const int op = pick(depth > 0 ? 5 : 3);
  const std::size_t rest = size_budget - 1;
  const std::size_t left = std::uniform_int_distribution<std::size_t>(1, std::max<std::size_t>(1, rest - 1))(rng);
  switch (op) {
    case 0: return Formula::neg(random_formula(rng, vars, depth, rest));
    case 1: return Formula::conj(random_formula(rng, vars, depth, left), random_formula(rng, vars, depth, rest - left));
    case 2: return Formula::disj(random_formula(rng, vars, depth, left), random_formula(rng, vars, depth, rest - left));
    case 3: return Formula::imp(random_formula(rng, vars, depth, left), random_formula(rng, vars, depth, rest - left));
    case 4: return Formula::dia(0, random_formula(rng, vars, depth - 1, rest));
    default: return Formula::box(0, random_formula(rng, vars, depth - 1, rest));
  }
}

CriterionResult run_criterion(int id, const SelftestOptions& options) {
  static const char* const titles[] = {
      "",
      "Simmons-Esakia: scattered <=> Magari on the space corpus",
      "linearity: primal <=> (lin) <=> (.3)",
      "derived topology laws",
      "d-reflection and the d-plus characterisation",
      "GL decision with verified countermodels",
      "Abashidze-Blass d-maps onto trees",
      "Icard word fragment",
      "word entailment agrees with GL",
      "ordinal arithmetic laws",
  };
  static const double limits[] = {0, 60, 0, 0, 0, 300, 0, 60, 0, 0};
  if (id < 1 || id > kCriterionCount) throw std::out_of_range("no criterion " + std::to_string(id));
  const auto start = std::chrono::steady_clock::now();
  CriterionResult r;
  try {
    switch (id) {
      case 1: r = simmons_esakia(options); break;
      case 2: r = linearity(options); break;
      case 3: r = plus_laws(options); break;
      case 4: r = reflection(options); break;
      case 5: r = gl_decision(options); break;
      case 6: r = abashidze_blass(options); break;
      case 7: r = icard_words(options); break;
      case 8: r = cross_oracle(options); break;
      default: r = ordinal_laws(options); break;
    }
  } catch (const std::exception& e) {
    r = {id, "", false, std::string("exception: ") + e.what()};
  }
  r.id = id;
  r.title = titles[id];
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limits[id] > 0 && r.seconds > limits[id]) {
    r.passed = false;
    r.detail += "; exceeded the " + std::to_string(static_cast<int>(limits[id])) + " s budget";
  }
  return r;
}

std::vector<CriterionResult> run_selftest(const SelftestOptions& options,
                                          const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) {
    out.push_back(run_criterion(id, options));
    if (on_result) on_result(out.back());
  }
  return out;
}

}  // namespace provtop
