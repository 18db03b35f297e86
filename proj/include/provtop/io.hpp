#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "provtop/dmap.hpp"
#include "provtop/finite_space.hpp"
#include "provtop/icard.hpp"
#include "provtop/kripke.hpp"

namespace provtop {

// Malformed JSON input (wrong shape, missing keys).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Json = nlohmann::json;

Json set_to_json(PointSet s);
PointSet set_from_json(const Json& j, std::size_t n_points);

// {"points":n,"opens":[...]} | {"points":n,"subbase":[...]} | {"order":[[i,j]],"mode":...}
FiniteSpace space_from_json(const Json& j, const Limits& limits = {});
Json space_to_json(const FiniteSpace& s);
Json report_to_json(const SpaceReport& r);
Json glp_report_to_json(const GlpSpaceReport& r);

Tree tree_from_json(const Json& j);
Json tree_to_json(const Tree& t);

Json valuation_to_json(const Valuation& v);
Valuation valuation_from_json(const Json& j, std::size_t n_points);

Json verdict_to_json(const GlVerdict& v);
Json refutation_to_json(const OrdinalRefutation& r);
Json decision_to_json(const WordDecision& d);

// Plain tree; x -> y for each child y.
std::string tree_to_dot(const Tree& t);
// Node labels list the subformulas of phi true there; the refuting node is doubled.
std::string countermodel_to_dot(const Countermodel& m, const Formula& phi);
// Node labels carry least preimages.
std::string dmap_to_dot(const SymbolicDMap& f);

}  // namespace provtop
