#include "provtop/finite_space.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace provtop {

std::vector<std::size_t> members(PointSet s) {
  std::vector<std::size_t> out;
  while (s != 0) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(s)));
    s &= s - 1;
  }
  return out;
}

PointSet from_members(std::span<const std::size_t> points, std::size_t n_points) {
  PointSet s = 0;
  for (std::size_t p : points) {
    if (p >= n_points)
      throw SpaceError("point " + std::to_string(p) + " out of range for a space of " +
                       std::to_string(n_points) + " points");
    s |= bit(p);
  }
  return s;
}

namespace {

void check_representable(std::size_t n) {
  if (n > kMaxRepresentablePoints)
    throw CapExceeded("spaces are limited to " + std::to_string(kMaxRepresentablePoints) +
                      " points");
}

void check_cap(std::size_t n, std::size_t cap, const char* what) {
  if (n > cap)
    throw CapExceeded(std::string(what) + " is limited to " + std::to_string(cap) +
                      " points (got " + std::to_string(n) + ")");
}

void check_in_range(PointSet s, std::size_t n) {
  if (!subset_of(s, full_set(n)))
    throw SpaceError("subset out of range for a space of " + std::to_string(n) + " points");
}

// Least neighbourhood of each point: intersection of all family members containing it.
std::vector<PointSet> least_neighbourhoods(std::size_t n, std::span<const PointSet> family) {
  std::vector<PointSet> nbhd(n, full_set(n));
  for (PointSet u : family)
    for (std::size_t x : members(u)) nbhd[x] &= u;
  return nbhd;
}

// All sets U with nbhd(x) subset of U for each x in U; this is the Alexandrov topology
// generated by the neighbourhoods, listed in increasing mask order.
std::vector<PointSet> opens_from_neighbourhoods(std::size_t n, const std::vector<PointSet>& nbhd) {
  std::vector<PointSet> opens;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t m = 0; m < total; ++m) {
    const auto u = static_cast<PointSet>(m);
    bool open = true;
    for (PointSet rest = u; rest != 0 && open; rest &= rest - 1)
      open = subset_of(nbhd[static_cast<std::size_t>(std::countr_zero(rest))], u);
    if (open) opens.push_back(u);
  }
  return opens;
}

}  // namespace

bool is_topology(std::size_t n, std::span<const PointSet> family) {
  check_representable(n);
  std::vector<PointSet> sorted(family.begin(), family.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (PointSet u : sorted)
    if (!subset_of(u, full_set(n))) return false;
  if (!std::binary_search(sorted.begin(), sorted.end(), PointSet{0}) ||
      !std::binary_search(sorted.begin(), sorted.end(), full_set(n)))
    return false;
  if (n <= 20) {
    // A finite family with 0 and X is a topology iff it is exactly the set of unions of
    // its least neighbourhoods.
    return opens_from_neighbourhoods(n, least_neighbourhoods(n, sorted)) == sorted;
  }
  for (PointSet a : sorted)
    for (PointSet b : sorted)
      if (!std::binary_search(sorted.begin(), sorted.end(), a | b) ||
          !std::binary_search(sorted.begin(), sorted.end(), a & b))
        return false;
  return true;
}

FiniteSpace::FiniteSpace(std::size_t n, std::vector<PointSet> opens, std::vector<PointSet> nbhd)
    : n_(n), opens_(std::move(opens)), nbhd_(std::move(nbhd)) {}

FiniteSpace::FiniteSpace(std::size_t n_points, std::vector<PointSet> opens) : n_(n_points) {
  check_representable(n_points);
  for (PointSet u : opens) check_in_range(u, n_points);
  if (!is_topology(n_points, opens)) throw SpaceError("family of sets is not a topology");
  std::sort(opens.begin(), opens.end());
  opens.erase(std::unique(opens.begin(), opens.end()), opens.end());
  nbhd_ = least_neighbourhoods(n_points, opens);
  opens_ = std::move(opens);
}

FiniteSpace FiniteSpace::discrete(std::size_t n) {
  check_representable(n);
  std::vector<PointSet> nbhd(n);
  for (std::size_t x = 0; x < n; ++x) nbhd[x] = bit(x);
  return FiniteSpace(n, opens_from_neighbourhoods(n, nbhd), nbhd);
}

FiniteSpace FiniteSpace::indiscrete(std::size_t n) {
  check_representable(n);
  std::vector<PointSet> opens{0};
  if (n > 0) opens.push_back(full_set(n));
  return FiniteSpace(n, std::move(opens), std::vector<PointSet>(n, full_set(n)));
}

bool FiniteSpace::is_open(PointSet s) const {
  return std::binary_search(opens_.begin(), opens_.end(), s);
}

PointSet FiniteSpace::interior(PointSet s) const {
  PointSet out = 0;
  for (std::size_t x : members(s))
    if (subset_of(nbhd_[x], s)) out |= bit(x);
  return out;
}

FiniteSpace FiniteSpace::relabel(std::span<const std::size_t> perm) const {
  if (perm.size() != n_) throw SpaceError("relabelling has the wrong length");
  PointSet seen = 0;
  for (std::size_t p : perm) {
    if (p >= n_ || contains(seen, p)) throw SpaceError("relabelling is not a permutation");
    seen |= bit(p);
  }
  std::vector<PointSet> opens;
  opens.reserve(opens_.size());
  for (PointSet u : opens_) {
    PointSet v = 0;
    for (std::size_t x : members(u)) v |= bit(perm[x]);
    opens.push_back(v);
  }
  return FiniteSpace(n_, std::move(opens));
}

PointSet PointMap::image(PointSet s) const {
  PointSet out = 0;
  for (std::size_t x : members(s)) out |= bit(assignment.at(x));
  return out;
}

PointSet PointMap::preimage(PointSet s) const {
  PointSet out = 0;
  for (std::size_t x = 0; x < assignment.size(); ++x)
    if (contains(s, assignment[x])) out |= bit(x);
  return out;
}

FiniteSpace from_subbase(std::size_t n, std::span<const PointSet> sets, const Limits& limits) {
  check_representable(n);
  check_cap(n, limits.max_points, "from_subbase");
  for (PointSet s : sets) check_in_range(s, n);
  // Finite intersections of the subbase give each point a least basic neighbourhood;
  // the generated topology is the family of unions of these.
  const auto nbhd = least_neighbourhoods(n, sets);
  return FiniteSpace(n, opens_from_neighbourhoods(n, nbhd));
}

FiniteSpace upset_topology(std::size_t n, std::span<const std::pair<std::size_t, std::size_t>> order,
                           OrderMode mode) {
  check_representable(n);
  std::vector<PointSet> above(n, 0);
  for (auto [i, j] : order) {
    if (i >= n || j >= n) throw SpaceError("order mentions a point out of range");
    if (i == j) throw SpaceError("relation is not irreflexive at point " + std::to_string(i));
    above[i] |= bit(j);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j : members(above[i]))
      if (!subset_of(above[j], above[i]))
        throw SpaceError("relation is not transitive at " + std::to_string(i) + " < " +
                         std::to_string(j));
  std::vector<PointSet> nbhd(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (mode == OrderMode::Upset) {
      nbhd[i] = bit(i) | above[i];
    } else {
      nbhd[i] = bit(i);
      for (std::size_t j = 0; j < n; ++j)
        if (contains(above[j], i)) nbhd[i] |= bit(j);
    }
  }
  return FiniteSpace(n, opens_from_neighbourhoods(n, nbhd));
}

PointSet derivative(const FiniteSpace& space, PointSet a) {
  PointSet out = 0;
  for (std::size_t x = 0; x < space.size(); ++x)
    if ((space.neighbourhood(x) & a & ~bit(x)) != 0) out |= bit(x);
  return out;
}

std::vector<PointSet> cantor_bendixson(const FiniteSpace& space) {
  std::vector<PointSet> seq{space.points()};
  while (seq.back() != 0) {
    const PointSet next = derivative(space, seq.back());
    if (next == seq.back()) break;
    seq.push_back(next);
  }
  return seq;
}

PointSet isolated_points(const FiniteSpace& space) {
  return space.points() & ~derivative(space, space.points());
}

SpaceReport classify(const FiniteSpace& space, const Limits& limits) {
  const std::size_t n = space.size();
  check_cap(n, limits.max_points_quadratic, "classify");
  const PointSet all = space.points();
  const std::uint64_t total = std::uint64_t{1} << n;

  std::vector<PointSet> d(total);
  for (std::uint64_t a = 0; a < total; ++a) d[a] = derivative(space, static_cast<PointSet>(a));

  SpaceReport r;
  const auto seq = cantor_bendixson(space);
  r.scattered = seq.back() == 0;
  r.cb_rank = r.scattered ? seq.size() - 1 : 0;
  r.rank_of_point.resize(n);
  for (std::size_t x = 0; x < n; ++x) {
    if (!r.scattered && contains(seq.back(), x)) continue;
    std::size_t k = 0;
    while (k + 1 < seq.size() && contains(seq[k + 1], x)) ++k;
    r.rank_of_point[x] = k;
  }

  r.t_d = true;
  for (std::uint64_t a = 0; a < total && r.t_d; ++a) r.t_d = subset_of(d[d[a]], d[a]);

  r.t1 = true;
  r.discrete = true;
  for (std::size_t x = 0; x < n; ++x) {
    r.t1 = r.t1 && d[bit(x)] == 0;
    r.discrete = r.discrete && space.is_open(bit(x));
  }

  // M1 (normality, additivity) and M2 are checked on every subset, independently of the
  // Cantor-Bendixson computation above.
  r.magari = d[0] == 0;
  for (std::uint64_t a = 0; a < total && r.magari; ++a)
    for (std::uint64_t b = a; b < total && r.magari; ++b) r.magari = d[a | b] == (d[a] | d[b]);
  for (std::uint64_t a = 0; a < total && r.magari; ++a) r.magari = d[a] == d[a & ~d[a]];

  r.primal = true;
  const auto& opens = space.opens();
  for (std::size_t x = 0; x < n && r.primal; ++x) {
    for (std::size_t i = 0; i < opens.size() && r.primal; ++i) {
      const PointSet xu = bit(x) | opens[i];
      if (space.is_open(xu)) continue;
      for (std::size_t j = i; j < opens.size(); ++j) {
        const PointSet xv = bit(x) | opens[j];
        if (!space.is_open(xv) && space.is_open(xu | opens[j])) {
          r.primal = false;
          break;
        }
      }
    }
  }
  (void)all;
  return r;
}

FiniteSpace plus_topology(const FiniteSpace& space, const Limits& limits) {
  const std::size_t n = space.size();
  check_cap(n, limits.max_points, "plus_topology");
  std::vector<PointSet> subbase = space.opens();
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t a = 0; a < total; ++a)
    subbase.push_back(derivative(space, static_cast<PointSet>(a)));
  std::sort(subbase.begin(), subbase.end());
  subbase.erase(std::unique(subbase.begin(), subbase.end()), subbase.end());
  return from_subbase(n, subbase, limits);
}

DSum dsum(const FiniteSpace& base, const std::map<std::size_t, FiniteSpace>& plugins,
          const Limits& limits) {
  const PointSet isolated = isolated_points(base);
  for (const auto& [j, y] : plugins) {
    if (j >= base.size()) throw SpaceError("plug point " + std::to_string(j) + " out of range");
    if (!contains(isolated, j))
      throw SpaceError("plug point " + std::to_string(j) + " is not isolated in the base");
  }
  std::vector<std::size_t> offsets(base.size());
  std::vector<std::size_t> projection;
  std::size_t total = 0;
  for (std::size_t j = 0; j < base.size(); ++j) {
    offsets[j] = total;
    const auto it = plugins.find(j);
    const std::size_t width = it == plugins.end() ? 1 : it->second.size();
    projection.insert(projection.end(), width, j);
    total += width;
  }
  check_representable(total);
  check_cap(total, limits.max_points, "dsum");

  std::vector<PointSet> subbase;
  for (std::size_t j : members(isolated)) {
    const auto it = plugins.find(j);
    if (it == plugins.end()) {
      subbase.push_back(bit(offsets[j]));
      continue;
    }
    for (PointSet v : it->second.opens()) subbase.push_back(v << offsets[j]);
  }
  for (PointSet u : base.opens()) {
    PointSet pre = 0;
    for (std::size_t z = 0; z < total; ++z)
      if (contains(u, projection[z])) pre |= bit(z);
    subbase.push_back(pre);
  }
  FiniteSpace space = from_subbase(total, subbase, limits);
  PointMap pi{space, base, std::move(projection)};
  return DSum{std::move(space), std::move(pi), std::move(offsets)};
}

std::string DMapCheck::describe() const {
  std::ostringstream os;
  switch (failure) {
    case Failure::None: return "d-map";
    case Failure::NotContinuous: os << "not continuous: preimage of open set "; break;
    case Failure::NotOpen: os << "not open: image of open set "; break;
    case Failure::NotPointwiseDiscrete: os << "not pointwise discrete: fiber "; break;
  }
  os << '{';
  bool first = true;
  for (std::size_t x : members(witness)) {
    os << (first ? "" : ",") << x;
    first = false;
  }
  os << '}';
  if (failure == Failure::NotContinuous) os << " is not open";
  if (failure == Failure::NotOpen) os << " is not open";
  if (failure == Failure::NotPointwiseDiscrete) os << " is not discrete";
  return os.str();
}

DMapCheck is_dmap(const PointMap& f) {
  if (f.assignment.size() != f.source.size())
    throw SpaceError("point map assignment does not cover the source");
  for (std::size_t y : f.assignment)
    if (y >= f.target.size()) throw SpaceError("point map assigns a point out of range");
  for (PointSet u : f.target.opens())
    if (!f.source.is_open(f.preimage(u))) return {DMapCheck::Failure::NotContinuous, u};
  for (PointSet w : f.source.opens())
    if (!f.target.is_open(f.image(w))) return {DMapCheck::Failure::NotOpen, w};
  for (std::size_t y = 0; y < f.target.size(); ++y) {
    const PointSet fiber = f.preimage(bit(y));
    for (std::size_t x : members(fiber))
      if ((f.source.neighbourhood(x) & fiber) != bit(x))
        return {DMapCheck::Failure::NotPointwiseDiscrete, fiber};
  }
  return {};
}

PointMap rank_map(const FiniteSpace& space) {
  const auto seq = cantor_bendixson(space);
  if (seq.back() != 0) throw SpaceError("rank map requires a scattered space");
  const std::size_t rank = seq.size() - 1;
  std::vector<PointSet> downsets;
  for (std::size_t j = 0; j <= rank; ++j) downsets.push_back(full_set(j));
  std::vector<std::size_t> assignment(space.size(), 0);
  for (std::size_t k = 1; k < seq.size(); ++k)
    for (std::size_t x : members(seq[k])) assignment[x] = k;
  return PointMap{space, FiniteSpace(rank, std::move(downsets)), std::move(assignment)};
}

namespace {

bool is_t_d(const FiniteSpace& space) {
  const std::uint64_t total = std::uint64_t{1} << space.size();
  for (std::uint64_t a = 0; a < total; ++a) {
    const PointSet da = derivative(space, static_cast<PointSet>(a));
    if (!subset_of(derivative(space, da), da)) return false;
  }
  return true;
}

}  // namespace

PointSet reflexive_points(const FiniteSpace& space, std::size_t m, const Limits& limits) {
  if (m == 0) throw SpaceError("reflexive_points needs m >= 1");
  check_cap(space.size(), limits.max_points_quadratic, "reflexive_points");
  if (!is_t_d(space)) throw SpaceError("reflexive_points requires a T_d space");

  const std::uint64_t total = std::uint64_t{1} << space.size();
  std::vector<PointSet> derived;
  for (std::uint64_t a = 0; a < total; ++a)
    derived.push_back(derivative(space, static_cast<PointSet>(a)));
  std::sort(derived.begin(), derived.end());
  derived.erase(std::unique(derived.begin(), derived.end()), derived.end());

  // Every intersection dA1 & ... & dAm (repetitions allowed, so shorter tuples are included).
  std::vector<PointSet> meets = derived;
  for (std::size_t k = 1; k < m; ++k) {
    std::vector<PointSet> next;
    for (PointSet a : meets)
      for (PointSet b : derived) next.push_back(a & b);
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    if (next == meets) break;
    meets = std::move(next);
  }

  PointSet out = 0;
  for (std::size_t x : members(derivative(space, space.points()))) {
    bool reflexive = true;
    for (PointSet meet : meets) {
      if (contains(meet, x) && !contains(derivative(space, meet), x)) {
        reflexive = false;
        break;
      }
    }
    if (reflexive) out |= bit(x);
  }
  return out;
}

bool GlpSpaceReport::ok() const noexcept {
  for (const auto& l : levels)
    if (!l.scattered) return false;
  for (const auto& p : pairs)
    if (!p.derived_sets_open || !p.refines) return false;
  return true;
}

GlpSpaceReport check_glp_space(std::span<const FiniteSpace> topologies, const Limits& limits) {
  GlpSpaceReport report;
  if (topologies.empty()) return report;
  const std::size_t n = topologies.front().size();
  for (const auto& t : topologies)
    if (t.size() != n) throw SpaceError("topologies of a GLP-space must share their carrier");
  check_cap(n, limits.max_points, "check_glp_space");

  for (const auto& t : topologies) report.levels.push_back({cantor_bendixson(t).back() == 0});
  for (std::size_t i = 0; i + 1 < topologies.size(); ++i) {
    const FiniteSpace& lower = topologies[i];
    const FiniteSpace& upper = topologies[i + 1];
    GlpPairReport pair;
    for (std::uint64_t a = (std::uint64_t{1} << n); a-- > 0;) {
      if (!upper.is_open(derivative(lower, static_cast<PointSet>(a)))) {
        pair.derived_sets_open = false;
        pair.d1_witness = static_cast<PointSet>(a);
        break;
      }
    }
    for (PointSet u : lower.opens()) {
      if (!upper.is_open(u)) {
        pair.refines = false;
        pair.d2_witness = u;
        break;
      }
    }
    report.pairs.push_back(pair);
  }
  return report;
}

MagariViolation::MagariViolation(std::string axiom, PointSet witness)
    : std::runtime_error("operator violates " + axiom + " at subset mask " +
                         std::to_string(witness)),
      axiom_(std::move(axiom)),
      witness_(witness) {}

FiniteSpace topology_from_operator(std::size_t n, std::span<const PointSet> table,
                                   const Limits& limits) {
  check_representable(n);
  check_cap(n, limits.max_points, "topology_from_operator");
  const std::uint64_t total = std::uint64_t{1} << n;
  if (table.size() != total) throw SpaceError("operator table must list all 2^n subsets");
  for (PointSet s : table) check_in_range(s, n);

  if (table[0] != 0) throw MagariViolation("M1 (normality)", 0);
  for (std::uint64_t a = 1; a < total; ++a) {
    PointSet joined = 0;
    for (std::size_t x : members(static_cast<PointSet>(a))) joined |= table[bit(x)];
    if (table[a] != joined) throw MagariViolation("M1 (additivity)", static_cast<PointSet>(a));
  }
  for (std::uint64_t a = 0; a < total; ++a)
    if (table[a] != table[a & ~table[a]]) throw MagariViolation("M2", static_cast<PointSet>(a));

  std::vector<PointSet> opens;
  for (std::uint64_t a = 0; a < total; ++a)
    if (subset_of(table[a], static_cast<PointSet>(a)))
      opens.push_back(full_set(n) & ~static_cast<PointSet>(a));

  std::optional<FiniteSpace> space;
  try {
    space.emplace(n, std::move(opens));
  } catch (const SpaceError&) {
    throw std::logic_error("closed sets of a Magari operator do not form a topology");
  }
  for (std::uint64_t a = 0; a < total; ++a)
    if (derivative(*space, static_cast<PointSet>(a)) != table[a])
      throw std::logic_error("recovered topology does not reproduce the operator");
  return *std::move(space);
}

namespace {

PointSet eval(std::span<const FiniteSpace> tops, const Valuation& v, const Formula& f) {
  const PointSet all = tops.front().points();
  switch (f.op()) {
    case Op::Top: return all;
    case Op::Bot: return 0;
    case Op::Var: {
      const auto it = v.find(f.name());
      return it == v.end() ? 0 : it->second;
    }
    case Op::Not: return all & ~eval(tops, v, f.child());
    case Op::And: return eval(tops, v, f.lhs()) & eval(tops, v, f.rhs());
    case Op::Or: return eval(tops, v, f.lhs()) | eval(tops, v, f.rhs());
    case Op::Imp: return (all & ~eval(tops, v, f.lhs())) | eval(tops, v, f.rhs());
    case Op::Dia: return derivative(tops[f.index()], eval(tops, v, f.child()));
    case Op::Box:
      return all & ~derivative(tops[f.index()], all & ~eval(tops, v, f.child()));
  }
  return 0;
}

void check_model_inputs(std::span<const FiniteSpace> tops, const Valuation& v, const Formula& f) {
  if (tops.empty()) throw SpaceError("model checking needs at least one topology");
  const std::size_t n = tops.front().size();
  for (const auto& t : tops)
    if (t.size() != n) throw SpaceError("topologies must share their carrier");
  if (modality_bound(f) > tops.size())
    throw std::out_of_range("formula uses modality " + std::to_string(modality_bound(f) - 1) +
                            " but only " + std::to_string(tops.size()) +
                            " topologies were given");
  for (const auto& [name, set] : v) check_in_range(set, n);
}

// Postorder program over the subformula DAG, evaluated once per valuation.
struct Program {
  struct Step {
    Op op;
    std::size_t a = 0, b = 0;
    std::size_t var = 0;
    Modality index = 0;
  };
  std::vector<Step> steps;
  std::vector<std::string> vars;

  std::size_t add(const Formula& f, std::map<Formula, std::size_t>& memo) {
    if (auto it = memo.find(f); it != memo.end()) return it->second;
    Step s{f.op()};
    if (f.op() == Op::Var) {
      auto pos = std::find(vars.begin(), vars.end(), f.name());
      s.var = static_cast<std::size_t>(pos - vars.begin());
      if (pos == vars.end()) vars.push_back(f.name());
    } else if (f.is_unary()) {
      s.a = add(f.child(), memo);
      if (f.is_modal()) s.index = f.index();
    } else if (f.is_binary()) {
      s.a = add(f.lhs(), memo);
      s.b = add(f.rhs(), memo);
    }
    steps.push_back(s);
    return memo[f] = steps.size() - 1;
  }
};

}  // namespace

PointSet model_check(std::span<const FiniteSpace> tops, const Valuation& v, const Formula& f) {
  check_model_inputs(tops, v, f);
  return eval(tops, v, f);
}

Validity validates(std::span<const FiniteSpace> tops, const Formula& f, const Limits& limits) {
  check_model_inputs(tops, {}, f);
  const std::size_t n = tops.front().size();
  Program prog;
  std::map<Formula, std::size_t> memo;
  prog.add(f, memo);
  const std::size_t k = prog.vars.size();
  if (n * k > limits.max_valuation_bits)
    throw CapExceeded("validity scan needs " + std::to_string(n * k) +
                      " valuation bits, cap is " + std::to_string(limits.max_valuation_bits));

  // Derivative lookup tables for each topology used.
  const std::size_t subsets = std::size_t{1} << n;
  std::vector<std::vector<PointSet>> dtab(tops.size());
  for (const auto& step : prog.steps) {
    if (!(step.op == Op::Dia || step.op == Op::Box) || !dtab[step.index].empty()) continue;
    dtab[step.index].resize(subsets);
    for (std::size_t a = 0; a < subsets; ++a)
      dtab[step.index][a] = derivative(tops[step.index], static_cast<PointSet>(a));
  }

  const PointSet all = full_set(n);
  std::vector<PointSet> val(prog.steps.size());
  std::vector<PointSet> assign(k, 0);
  const std::uint64_t combos = std::uint64_t{1} << (n * k);
  for (std::uint64_t c = 0; c < combos; ++c) {
    for (std::size_t i = 0; i < k; ++i) assign[i] = static_cast<PointSet>((c >> (i * n)) & all);
    for (std::size_t i = 0; i < prog.steps.size(); ++i) {
      const auto& s = prog.steps[i];
      switch (s.op) {
        case Op::Top: val[i] = all; break;
        case Op::Bot: val[i] = 0; break;
        case Op::Var: val[i] = assign[s.var]; break;
        case Op::Not: val[i] = all & ~val[s.a]; break;
        case Op::And: val[i] = val[s.a] & val[s.b]; break;
        case Op::Or: val[i] = val[s.a] | val[s.b]; break;
        case Op::Imp: val[i] = (all & ~val[s.a]) | val[s.b]; break;
        case Op::Dia: val[i] = dtab[s.index][val[s.a]]; break;
        case Op::Box: val[i] = all & ~dtab[s.index][all & ~val[s.a]]; break;
      }
    }
    if (val.back() != all) {
      Validity out;
      out.valid = false;
      for (std::size_t i = 0; i < k; ++i) out.countervaluation[prog.vars[i]] = assign[i];
      out.point = static_cast<std::size_t>(std::countr_zero(all & ~val.back()));
      return out;
    }
  }
  return {};
}

}  // namespace provtop
