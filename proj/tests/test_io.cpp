#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "provtop/io.hpp"
#include "provtop/selftest.hpp"

using namespace provtop;

TEST_CASE("space json round trip") {
  for (std::size_t n = 1; n <= 3; ++n)
    for (const auto& s : all_topologies(n)) CHECK(space_from_json(space_to_json(s)) == s);
}

TEST_CASE("three input forms") {
  auto a = space_from_json(Json::parse(R"({"points":3,"opens":[[],[1],[2],[1,2],[0,1,2]]})"));
  auto b = space_from_json(Json::parse(R"({"points":3,"subbase":[[1],[2]]})"));
  auto c = space_from_json(Json::parse(R"({"order":[[0,1],[0,2]]})"));
  CHECK(a == b);
  CHECK(b == c);
  auto left = space_from_json(Json::parse(R"({"order":[[0,1]],"mode":"left"})"));
  CHECK(left.is_open(0b01));
  CHECK_FALSE(left.is_open(0b10));
  auto lone = space_from_json(Json::parse(R"({"points":2,"order":[]})"));
  CHECK(lone == FiniteSpace::discrete(2));
}

TEST_CASE("malformed spaces") {
  CHECK_THROWS_AS(space_from_json(Json::parse(R"({"opens":[]})")), InputError);
  CHECK_THROWS_AS(space_from_json(Json::parse(R"([1,2])")), InputError);
  CHECK_THROWS_AS(space_from_json(Json::parse(R"({"points":2,"opens":[[0,5]]})")), std::exception);
  CHECK_THROWS_AS(space_from_json(Json::parse(R"({"points":2,"opens":[[],[0],[1]]})")), SpaceError);
  CHECK_THROWS_AS(space_from_json(Json::parse(R"({"order":[[0,1]],"mode":"sideways"})")), InputError);
}

TEST_CASE("trees and valuations") {
  Tree t({std::nullopt, 0, 0, 1});
  CHECK(tree_from_json(tree_to_json(t)) == t);
  CHECK(tree_to_json(t).dump() == R"({"parent":[null,0,0,1]})");
  CHECK_THROWS(tree_from_json(Json::parse(R"({"parent":[null,null]})")));
  Valuation v{{"p", 0b101}, {"q", 0}};
  CHECK(valuation_from_json(valuation_to_json(v), 3) == v);
  CHECK(set_to_json(0b101) == Json::parse("[0,2]"));
  CHECK(set_from_json(Json::parse("[2,0]"), 3) == 0b101);
  CHECK_THROWS(set_from_json(Json::parse("[3]"), 3));
}

TEST_CASE("reports") {
  auto r = report_to_json(classify(upset_space(fork(2))));
  CHECK(r["scattered"] == true);
  CHECK(r["primal"] == false);
  CHECK(r["cb_rank"] == 2);
  auto v = verdict_to_json(gl_decide(parse("<0>T")));
  CHECK(v["provable"] == false);
  CHECK(v["countermodel"]["tree"]["parent"].size() == 1);
  auto ref = refutation_to_json(*refute_on_ordinal(parse("p -> [0]p")));
  CHECK(ref["point"] == "w");
  CHECK(ref["dom"] == "w+1");
  auto d = decision_to_json(decide_word_implication(parse_word("T"), {parse_word("<0>T")}));
  CHECK(d["refuted_at"] == "0");
}

TEST_CASE("dot output") {
  auto dot = tree_to_dot(fork(2));
  CHECK(dot.find("n0 -> n1") != std::string::npos);
  CHECK(dot.find("n0 -> n2") != std::string::npos);
  Formula f = parse("<0>T");
  auto cm = countermodel_to_dot(*gl_decide(f).countermodel, f);
  CHECK(cm.find("peripheries=2") != std::string::npos);
  auto dm = dmap_to_dot(build_dmap(fork(2)));
  CHECK(dm.find("dom w+1") != std::string::npos);
}
