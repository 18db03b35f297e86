#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "provtop/formula.hpp"

namespace provtop {

// Subset of the points {0, ..., n-1} of a finite space, bit i = point i.
using PointSet = std::uint32_t;

inline constexpr std::size_t kMaxRepresentablePoints = 31;

constexpr PointSet bit(std::size_t point) noexcept { return PointSet{1} << point; }
constexpr PointSet full_set(std::size_t n) noexcept { return (PointSet{1} << n) - 1; }
constexpr bool contains(PointSet s, std::size_t point) noexcept { return (s >> point) & 1u; }
constexpr bool subset_of(PointSet a, PointSet b) noexcept { return (a & ~b) == 0; }

std::vector<std::size_t> members(PointSet s);
PointSet from_members(std::span<const std::size_t> points, std::size_t n_points);

// Size limits for the exhaustive scans.
struct Limits {
  std::size_t max_points = 16;            // single quantification over subsets
  std::size_t max_points_quadratic = 10;  // nested quantification (pairs of sets/opens)
  std::size_t max_valuation_bits = 24;    // points * variables for validity scans
};

class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input to a space operation: out-of-range points, non-topologies,
// non-isolated plug points, failed preconditions.
class SpaceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Finite topological space with an extensional, canonical family of opens.
class FiniteSpace {
 public:
  // Validates that `opens` is a topology on n points; duplicates are removed.
  FiniteSpace(std::size_t n_points, std::vector<PointSet> opens);

  static FiniteSpace discrete(std::size_t n_points);
  static FiniteSpace indiscrete(std::size_t n_points);

  std::size_t size() const noexcept { return n_; }
  PointSet points() const noexcept { return full_set(n_); }
  const std::vector<PointSet>& opens() const noexcept { return opens_; }
  bool is_open(PointSet s) const;
  bool is_closed(PointSet s) const { return is_open(points() & ~s); }

  // Least open set containing the point.
  PointSet neighbourhood(std::size_t point) const { return nbhd_.at(point); }
  PointSet interior(PointSet s) const;

  // Image of the space under a bijective relabelling old point -> perm[old].
  FiniteSpace relabel(std::span<const std::size_t> perm) const;

  friend bool operator==(const FiniteSpace& a, const FiniteSpace& b) {
    return a.n_ == b.n_ && a.opens_ == b.opens_;
  }

 private:
  FiniteSpace(std::size_t n, std::vector<PointSet> opens, std::vector<PointSet> nbhd);

  std::size_t n_;
  std::vector<PointSet> opens_;
  std::vector<PointSet> nbhd_;
};

// Checks the topology axioms on an arbitrary family via least neighbourhoods.
bool is_topology(std::size_t n_points, std::span<const PointSet> family);

// Map between finite spaces given by its point assignment.
struct PointMap {
  FiniteSpace source;
  FiniteSpace target;
  std::vector<std::size_t> assignment;

  PointSet image(PointSet s) const;
  PointSet preimage(PointSet s) const;
};

struct SpaceReport {
  bool scattered = false;
  bool t_d = false;
  bool t1 = false;
  bool discrete = false;
  bool magari = false;
  bool primal = false;
  std::size_t cb_rank = 0;
  // Empty for points of the perfect kernel of a non-scattered space.
  std::vector<std::optional<std::size_t>> rank_of_point;
};

// Assignment of point sets to variables; unlisted variables are false everywhere.
using Valuation = std::map<std::string, PointSet>;

enum class OrderMode { Upset, Left };

FiniteSpace from_subbase(std::size_t n_points, std::span<const PointSet> sets,
                         const Limits& limits = {});

// Alexandrov topology of a strict partial order given as pairs (i, j) meaning i < j.
FiniteSpace upset_topology(std::size_t n_points,
                           std::span<const std::pair<std::size_t, std::size_t>> order,
                           OrderMode mode = OrderMode::Upset);

// Limit points of `a`.
PointSet derivative(const FiniteSpace& space, PointSet a);
// d^k X for k = 0, 1, ... until the sequence stabilises (the last entry repeats or is empty).
std::vector<PointSet> cantor_bendixson(const FiniteSpace& space);
PointSet isolated_points(const FiniteSpace& space);

SpaceReport classify(const FiniteSpace& space, const Limits& limits = {});

// Coarsest refinement in which every derived set is open.
FiniteSpace plus_topology(const FiniteSpace& space, const Limits& limits = {});

struct DSum {
  FiniteSpace space;
  PointMap projection;
  // First carrier point of each summand, indexed by base point.
  std::vector<std::size_t> offsets;
};

DSum dsum(const FiniteSpace& base, const std::map<std::size_t, FiniteSpace>& plugins,
          const Limits& limits = {});

struct DMapCheck {
  enum class Failure { None, NotContinuous, NotOpen, NotPointwiseDiscrete };
  Failure failure = Failure::None;
  // Offending target open, source open, or fiber.
  PointSet witness = 0;

  bool ok() const noexcept { return failure == Failure::None; }
  std::string describe() const;
};

DMapCheck is_dmap(const PointMap& f);

// Onto d-map into the chain {0 < ... < cb_rank-1} with its left topology.
PointMap rank_map(const FiniteSpace& space);

// Points a in dX with a in dA1 & ... & dAm  =>  a in d(dA1 & ... & dAm) for all A1..Am.
PointSet reflexive_points(const FiniteSpace& space, std::size_t m, const Limits& limits = {});

struct GlpLevelReport {
  bool scattered = false;  // D0
};

struct GlpPairReport {
  bool derived_sets_open = true;  // D1
  std::optional<PointSet> d1_witness;
  bool refines = true;  // D2
  std::optional<PointSet> d2_witness;
};

struct GlpSpaceReport {
  std::vector<GlpLevelReport> levels;
  std::vector<GlpPairReport> pairs;  // pairs[i] relates levels i and i+1

  bool ok() const noexcept;
};

GlpSpaceReport check_glp_space(std::span<const FiniteSpace> topologies,
                               const Limits& limits = {});

class MagariViolation : public std::runtime_error {
 public:
  MagariViolation(std::string axiom, PointSet witness);
  const std::string& axiom() const noexcept { return axiom_; }
  PointSet witness() const noexcept { return witness_; }

 private:
  std::string axiom_;
  PointSet witness_;
};

// Recovers the unique topology whose derivative is `table` (indexed by subset mask).
FiniteSpace topology_from_operator(std::size_t n_points, std::span<const PointSet> table,
                                   const Limits& limits = {});

PointSet model_check(std::span<const FiniteSpace> topologies, const Valuation& v,
                     const Formula& f);
inline PointSet model_check(const FiniteSpace& space, const Valuation& v, const Formula& f) {
  return model_check(std::span<const FiniteSpace>(&space, 1), v, f);
}

struct Validity {
  bool valid = true;
  Valuation countervaluation;
  std::size_t point = 0;
};

Validity validates(std::span<const FiniteSpace> topologies, const Formula& f,
                   const Limits& limits = {});
inline Validity validates(const FiniteSpace& space, const Formula& f, const Limits& limits = {}) {
  return validates(std::span<const FiniteSpace>(&space, 1), f, limits);
}

}  // namespace provtop
