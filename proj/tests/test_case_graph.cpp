#include "doctest.h"

#include <algorithm>

#include "casekit/case_graph.hpp"
#include "support/generators.hpp"

using namespace casekit;

namespace {

bool has_rule(const std::vector<Diagnostic>& diags, const std::string& rule,
              const std::string& node = "") {
  return std::any_of(diags.begin(), diags.end(), [&](const Diagnostic& d) {
    return d.rule == rule && (node.empty() || d.node == node);
  });
}

Claim make_claim(const std::string& id, const std::string& text = "t") {
  Claim c;
  c.id = id;
  c.text = text;
  return c;
}

Argument make_argument(const std::string& id, const std::string& claim,
                       std::vector<std::string> supports,
                       BlockKind block = BlockKind::Decomposition) {
  Argument a;
  a.id = id;
  a.block = block;
  a.claim = claim;
  a.supports = std::move(supports);
  return a;
}

}  // namespace

TEST_CASE("status lattice ranks and colour names") {
  CHECK(status_rank(Status::Unevaluated) == 0);
  CHECK(status_rank(Status::Deferred) == 1);
  CHECK(status_rank(Status::Partial) == 2);
  CHECK(status_rank(Status::StandardsAssumed) == 3);
  CHECK(status_rank(Status::Satisfied) == 4);
  CHECK_THROWS_AS(status_rank(Status::Expanded), std::logic_error);

  for (Status s : {Status::Unevaluated, Status::Expanded, Status::Satisfied,
                   Status::Partial, Status::StandardsAssumed, Status::Deferred}) {
    CHECK(status_from_colour(status_colour(s)) == s);
  }
  CHECK(status_colour(Status::Unevaluated) == std::string("white"));
  CHECK(status_colour(Status::Expanded) == std::string("purple"));
  CHECK_FALSE(status_from_colour("chartreuse").has_value());

  CHECK(min_status(Status::Satisfied, Status::Deferred) == Status::Deferred);
  CHECK(max_status(Status::Partial, Status::StandardsAssumed) == Status::StandardsAssumed);
}

TEST_CASE("node id syntax") {
  CHECK(valid_node_id("C1"));
  CHECK(valid_node_id("C3.1.1"));
  CHECK(valid_node_id("ev-a1"));
  CHECK(valid_node_id("G_0"));
  CHECK_FALSE(valid_node_id(""));
  CHECK_FALSE(valid_node_id("1C"));
  CHECK_FALSE(valid_node_id(".C"));
  CHECK_FALSE(valid_node_id("C 1"));
  CHECK_FALSE(valid_node_id("C#1"));
}

TEST_CASE("well-formed case produces no errors") {
  CaseGraph g;
  g.claims["C1"] = make_claim("C1", "top");
  g.claims["C2"] = make_claim("C2", "sub");
  g.evidence["E1"] = {"E1", "report", {}};
  g.arguments["A1"] = make_argument("A1", "C1", {"C2", "E1"});
  auto diags = check_wellformed(g);
  CHECK_FALSE(has_errors(diags));
  CHECK(has_rule(diags, "core.assumption", "C2"));
}

TEST_CASE("duplicate ids across kinds are reported") {
  CaseGraph g;
  g.claims["X"] = make_claim("X");
  g.evidence["X"] = {"X", "t", {}};
  auto diags = check_wellformed(g);
  CHECK(has_rule(diags, "core.duplicate-id", "X"));
}

TEST_CASE("empty claim text is an error, empty evidence text is not") {
  CaseGraph g;
  g.claims["C1"] = make_claim("C1", "");
  g.evidence["E1"] = {"E1", "", {}};
  auto diags = check_wellformed(g);
  CHECK(has_rule(diags, "core.empty-text", "C1"));
  CHECK_FALSE(has_rule(diags, "core.empty-text", "E1"));
}

TEST_CASE("dangling references and kind mismatches") {
  CaseGraph g;
  g.claims["C1"] = make_claim("C1");
  g.evidence["E1"] = {"E1", "t", {}};
  g.arguments["A1"] = make_argument("A1", "MISSING", {"C1"});
  g.arguments["A2"] = make_argument("A2", "E1", {"C1"});
  auto sided = make_argument("A3", "C1", {"C1x"});
  sided.side = "E1";
  g.arguments["A3"] = sided;
  auto diags = check_wellformed(g);
  CHECK(has_rule(diags, "core.dangling-ref", "A1"));
  CHECK(has_rule(diags, "core.ref-kind", "A2"));
  CHECK(has_rule(diags, "core.dangling-ref", "A3"));
  CHECK(has_rule(diags, "core.ref-kind", "A3"));
}

TEST_CASE("empty support list is an error") {
  CaseGraph g;
  g.claims["C1"] = make_claim("C1");
  g.arguments["A1"] = make_argument("A1", "C1", {});
  CHECK(has_rule(check_wellformed(g), "core.no-supports", "A1"));
}

TEST_CASE("defeater targets may be any node kind") {
  CaseGraph g;
  g.claims["C1"] = make_claim("C1");
  g.claims["C2"] = make_claim("C2");
  g.evidence["E1"] = {"E1", "t", {}};
  g.arguments["A1"] = make_argument("A1", "C1", {"C2"});
  g.defeaters["D1"] = {"D1", DefeaterKind::Undercut, "A1", "doubt", false};
  g.defeaters["D2"] = {"D2", DefeaterKind::Rebuttal, "C1", "doubt", false};
  g.defeaters["D3"] = {"D3", DefeaterKind::Undercut, "E1", "doubt", false};
  g.defeaters["D4"] = {"D4", DefeaterKind::Rebuttal, "GHOST", "doubt", false};
  auto diags = check_wellformed(g);
  CHECK_FALSE(has_rule(diags, "core.dangling-ref", "D1"));
  CHECK_FALSE(has_rule(diags, "core.dangling-ref", "D2"));
  CHECK_FALSE(has_rule(diags, "core.dangling-ref", "D3"));
  CHECK(has_rule(diags, "core.dangling-ref", "D4"));
}

TEST_CASE("direct and indirect cycles are reported") {
  CaseGraph g;
  g.claims["C1"] = make_claim("C1");
  g.claims["C2"] = make_claim("C2");
  g.claims["C3"] = make_claim("C3");
  g.arguments["A1"] = make_argument("A1", "C1", {"C2"});
  g.arguments["A2"] = make_argument("A2", "C2", {"C3"});
  g.arguments["A3"] = make_argument("A3", "C3", {"C1"});
  auto diags = check_wellformed(g);
  CHECK(has_rule(diags, "core.cycle"));

  CaseGraph self;
  self.claims["C1"] = make_claim("C1");
  self.arguments["A1"] = make_argument("A1", "C1", {"C1"});
  CHECK(has_rule(check_wellformed(self), "core.cycle"));
}

TEST_CASE("side claims can create cycles too") {
  CaseGraph g;
  g.claims["C1"] = make_claim("C1");
  g.claims["C2"] = make_claim("C2");
  auto a1 = make_argument("A1", "C1", {"C2"});
  a1.side = "C1";
  g.arguments["A1"] = a1;
  CHECK(has_rule(check_wellformed(g), "core.cycle"));
}

TEST_CASE("status on a supported claim draws a warning") {
  CaseGraph g;
  auto c1 = make_claim("C1");
  c1.declared = Status::Satisfied;
  g.claims["C1"] = c1;
  g.claims["C2"] = make_claim("C2");
  g.arguments["A1"] = make_argument("A1", "C1", {"C2"});
  auto diags = check_wellformed(g);
  CHECK(has_rule(diags, "core.status-on-supported-claim", "C1"));
  CHECK_FALSE(has_errors(diags));
}

TEST_CASE("purple without an expansion path draws a warning") {
  CaseGraph g;
  auto c1 = make_claim("C1");
  c1.declared = Status::Expanded;
  g.claims["C1"] = c1;
  CHECK(has_rule(check_wellformed(g), "core.purple-no-expansion", "C1"));

  auto c2 = make_claim("C2");
  c2.declared = Status::Expanded;
  c2.expands = "sub.casl";
  CaseGraph g2;
  g2.claims["C2"] = c2;
  CHECK_FALSE(has_rule(check_wellformed(g2), "core.purple-no-expansion", "C2"));
}

TEST_CASE("root claims are those never used as support or side") {
  CaseGraph g;
  g.claims["C1"] = make_claim("C1");
  g.claims["C2"] = make_claim("C2");
  g.claims["C3"] = make_claim("C3");
  auto a1 = make_argument("A1", "C1", {"C2"});
  a1.side = "C3";
  g.arguments["A1"] = a1;
  auto roots = g.root_claims();
  REQUIRE(roots.size() == 1);
  CHECK(roots[0] == "C1");
}

TEST_CASE("generated documents are always well formed") {
  testgen::Rng rng(20240817);
  for (int i = 0; i < 300; ++i) {
    auto doc = testgen::random_document(rng);
    auto diags = check_wellformed(doc.graph);
    if (has_errors(diags)) {
      for (const auto& d : diags) {
        if (d.severity == Severity::Error) {
          CAPTURE(render_diagnostic(d));
        }
      }
    }
    REQUIRE_FALSE(has_errors(diags));
  }
}

// Cycle detection is checked against an edge-set oracle: Kahn's algorithm
// on the claim/argument dependency graph. A topological order exists iff
// the validator reports no cycle.
TEST_CASE("cycle detection agrees with a topological-sort oracle") {
  testgen::Rng rng(99);
  for (int round = 0; round < 500; ++round) {
    CaseGraph g;
    std::size_t n = testgen::pick(rng, 2, 8);
    for (std::size_t i = 0; i < n; ++i) {
      g.claims["C" + std::to_string(i)] = make_claim("C" + std::to_string(i));
    }
    std::size_t n_args = testgen::pick(rng, 1, 6);
    for (std::size_t a = 0; a < n_args; ++a) {
      std::string top = "C" + std::to_string(testgen::pick(rng, 0, n - 1));
      std::vector<std::string> sup;
      std::size_t n_sup = testgen::pick(rng, 1, 3);
      for (std::size_t s = 0; s < n_sup; ++s) {
        sup.push_back("C" + std::to_string(testgen::pick(rng, 0, n - 1)));
      }
      g.arguments["A" + std::to_string(a)] = make_argument("A" + std::to_string(a), top, sup);
    }

    std::map<std::string, std::vector<std::string>> edges;
    std::map<std::string, int> indegree;
    for (const auto& [id, c] : g.claims) indegree[id] = 0;
    for (const auto& [id, arg] : g.arguments) {
      for (const auto& s : arg.supports) {
        edges[arg.claim].push_back(s);
        ++indegree[s];
      }
    }
    std::vector<std::string> queue;
    for (const auto& [id, deg] : indegree) {
      if (deg == 0) queue.push_back(id);
    }
    std::size_t seen = 0;
    while (!queue.empty()) {
      std::string cur = queue.back();
      queue.pop_back();
      ++seen;
      for (const auto& next : edges[cur]) {
        if (--indegree[next] == 0) queue.push_back(next);
      }
    }
    bool acyclic = seen == g.claims.size();
    bool reported = has_rule(check_wellformed(g), "core.cycle");
    CAPTURE(round);
    CHECK(reported == !acyclic);
  }
}
