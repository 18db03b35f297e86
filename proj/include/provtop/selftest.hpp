#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "provtop/finite_space.hpp"
#include "provtop/formula.hpp"

namespace provtop {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

struct SelftestOptions {
  std::uint64_t seed = 20240611;
  std::size_t samples = 1000;         // ordinal samples per tree
  std::size_t random_spaces = 500;    // 5-7 point spaces
  std::size_t random_formulas = 200;  // GL verdicts checked
};

inline constexpr int kCriterionCount = 9;

CriterionResult run_criterion(int id, const SelftestOptions& options = {});
std::vector<CriterionResult> run_selftest(
    const SelftestOptions& options = {},
    const std::function<void(const CriterionResult&)>& on_result = {});

// Every topology on n points, one per preorder (n <= 6).
std::vector<FiniteSpace> all_topologies(std::size_t n);
// Every topology on n points by filtering all families of subsets (n <= 4).
std::vector<FiniteSpace> all_topologies_by_families(std::size_t n);
// All topologies on 1..4 points and `random_count` random 5-7 point spaces, half from
// random strict orders and half from random subbases.
std::vector<FiniteSpace> space_corpus(std::uint64_t seed, std::size_t random_count);

// Random formula over the given variables with modal depth at most `depth`, modality 0.
Formula random_formula(std::mt19937_64& rng, const std::vector<std::string>& vars,
                       std::size_t depth, std::size_t size_budget = 8);

}  // namespace provtop
