#include "doctest.h"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "casekit/block_rules.hpp"
#include "casekit/casl.hpp"
#include "support/generators.hpp"

using namespace casekit;

namespace {

CaseGraph load_fixture(const std::string& name) {
  std::ifstream in(std::string(CASEKIT_FIXTURE_DIR) + "/block_rules/" + name,
                   std::ios::binary);
  REQUIRE(in);
  std::ostringstream buf;
  buf << in.rdbuf();
  auto parsed = casl::parse(buf.str());
  REQUIRE(parsed.ok());
  REQUIRE_FALSE(has_errors(check_wellformed(parsed.doc.graph)));
  return parsed.doc.graph;
}

std::set<std::string> flagged_arguments(const CaseGraph& g) {
  std::set<std::string> out;
  for (const auto& d : validate_blocks(g)) out.insert(d.node);
  return out;
}

}  // namespace

TEST_CASE("corpus: the validator flags exactly the seeded arguments") {
  const std::map<std::string, std::set<std::string>> expectations = {
      {"decomposition_valid.casl", {}},
      {"decomposition_arity.casl", {"BAD"}},
      {"decomposition_kind.casl", {"BAD"}},
      {"substitution_valid.casl", {}},
      {"substitution_arity.casl", {"BAD"}},
      {"substitution_kind.casl", {"BAD"}},
      {"evidence_valid.casl", {}},
      {"evidence_kind_claim.casl", {"BAD"}},
      {"evidence_kind_mixed.casl", {"BAD"}},
      {"concretion_valid.casl", {}},
      {"concretion_arity.casl", {"BAD"}},
      {"concretion_kind.casl", {"BAD"}},
      {"calculation_valid.casl", {}},
      {"calculation_no_side.casl", {"BAD"}},
      {"calculation_two_no_side.casl", {"BAD1", "BAD2"}},
  };
  for (const auto& [name, expected] : expectations) {
    CAPTURE(name);
    CHECK(flagged_arguments(load_fixture(name)) == expected);
  }
}

TEST_CASE("rule ids seen in the corpus match their block") {
  auto g = load_fixture("decomposition_arity.casl");
  auto diags = validate_blocks(g);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].rule == "block.decomposition.arity");
  CHECK(diags[0].severity == Severity::Error);

  g = load_fixture("calculation_no_side.casl");
  diags = validate_blocks(g);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].rule == "block.side-claim");
  CHECK(diags[0].severity == Severity::Warning);
}

TEST_CASE("missing side claims warn for every block type") {
  for (BlockKind kind : {BlockKind::Decomposition, BlockKind::Substitution,
                         BlockKind::EvidenceIncorporation, BlockKind::Concretion,
                         BlockKind::Calculation}) {
    CaseGraph g;
    Claim top;
    top.id = "C1";
    top.text = "t";
    g.claims["C1"] = top;
    Claim sub = top;
    sub.id = "C2";
    g.claims["C2"] = sub;
    Claim sub2 = top;
    sub2.id = "C3";
    g.claims["C3"] = sub2;
    Argument a;
    a.id = "A1";
    a.block = kind;
    a.claim = "C1";
    a.supports = {"C2"};
    if (kind == BlockKind::Decomposition) a.supports.push_back("C3");
    g.arguments["A1"] = a;
    bool warned = false;
    for (const auto& d : validate_blocks(g)) {
      if (d.rule == "block.side-claim" && d.node == "A1") {
        warned = d.severity == Severity::Warning;
      }
    }
    CAPTURE(block_keyword(kind));
    CHECK(warned);
  }
}

TEST_CASE("substitution and concretion accept exactly one claim") {
  CaseGraph g;
  for (const char* id : {"C1", "C2", "C3", "S"}) {
    Claim c;
    c.id = id;
    c.text = "t";
    g.claims[id] = c;
  }
  Argument a;
  a.id = "A1";
  a.block = BlockKind::Substitution;
  a.claim = "C1";
  a.supports = {"C2"};
  a.side = "S";
  g.arguments["A1"] = a;
  CHECK(validate_blocks(g).empty());

  g.arguments["A1"].supports = {"C2", "C3"};
  auto diags = validate_blocks(g);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].rule == "block.substitution.arity");
}

TEST_CASE("diagnostics are ordered by argument then rule") {
  CaseGraph g;
  for (const char* id : {"C1", "C2", "C3"}) {
    Claim c;
    c.id = id;
    c.text = "t";
    g.claims[id] = c;
  }
  Evidence e;
  e.id = "E1";
  e.text = "r";
  g.evidence["E1"] = e;
  Argument a;
  a.id = "A2";
  a.block = BlockKind::Decomposition;
  a.claim = "C1";
  a.supports = {"E1"};
  g.arguments["A2"] = a;
  Argument b;
  b.id = "A1";
  b.block = BlockKind::Concretion;
  b.claim = "C2";
  b.supports = {"E1"};
  g.arguments["A1"] = b;
  auto diags = validate_blocks(g);
  REQUIRE(diags.size() >= 4);
  for (std::size_t i = 1; i < diags.size(); ++i) {
    CHECK(std::pair(diags[i - 1].node, diags[i - 1].rule) <=
          std::pair(diags[i].node, diags[i].rule));
  }
}

TEST_CASE("the rule catalogue is closed over fuzzed graphs") {
  std::set<std::string> catalogue;
  for (const auto& rule : block_rule_catalogue()) catalogue.insert(rule.id);
  CHECK(catalogue.size() == block_rule_catalogue().size());

  testgen::Rng rng(31337);
  for (int i = 0; i < 400; ++i) {
    auto doc = testgen::random_document(rng);
    for (const auto& d : validate_blocks(doc.graph)) {
      CAPTURE(d.rule);
      CHECK(catalogue.count(d.rule) == 1);
      CHECK(doc.graph.arguments.count(d.node) == 1);
    }
  }
}
