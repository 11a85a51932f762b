#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "casekit/dpn.hpp"

// Brute-force reachability oracle, shared by the unit suite and the
// acceptance checks: first materialise the whole bounded state graph by
// fixpoint iteration, then take shortest distances over it. Deliberately a
// different algorithm shape from the library's single-pass bounded search.
namespace testgen {

struct OracleState {
  std::vector<std::string> successors;  // fingerprints of in-bound successors
  bool fires = false;                   // any transition enabled at all
  bool over_bound = false;              // some successor would exceed the bound
};

inline std::map<std::string, OracleState> oracle_graph(
    const casekit::dpn::Net& net, const casekit::dpn::Marking& initial,
    std::size_t bound) {
  using casekit::dpn::Marking;
  std::map<std::string, OracleState> graph;
  std::map<std::string, Marking> reps;
  std::vector<std::string> todo;
  std::string start = casekit::dpn::fingerprint(initial);
  reps[start] = initial;
  todo.push_back(start);
  while (!todo.empty()) {
    std::string fp = todo.back();
    todo.pop_back();
    if (graph.count(fp)) continue;
    OracleState& state = graph[fp];
    const Marking rep = reps.at(fp);
    for (const auto& firing : casekit::dpn::enabled(net, rep)) {
      state.fires = true;
      auto next = casekit::dpn::fire(net, rep, firing.transition);
      bool over = false;
      for (const auto& [place, tokens] : next.marking.tokens) {
        if (tokens.size() > bound) over = true;
      }
      if (over) {
        state.over_bound = true;
        continue;
      }
      std::string next_fp = casekit::dpn::fingerprint(next.marking);
      state.successors.push_back(next_fp);
      if (!reps.count(next_fp)) {
        reps[next_fp] = next.marking;
        todo.push_back(next_fp);
      }
    }
  }
  return graph;
}

// Mirrors the documented contract on the explicit graph: states within
// `max_depth` shortest-path steps are reported; truncation means either an
// expanded state had an over-bound successor or a state at the depth limit
// could still fire.
inline void oracle_reach(const std::map<std::string, OracleState>& graph,
                         const std::string& start, std::size_t max_depth,
                         std::set<std::string>& seen, bool& truncated) {
  std::map<std::string, std::size_t> dist;
  std::vector<std::string> frontier{start};
  dist[start] = 0;
  for (std::size_t d = 0; !frontier.empty(); ++d) {
    std::vector<std::string> next;
    for (const auto& fp : frontier) {
      if (d >= max_depth) continue;
      for (const auto& succ : graph.at(fp).successors) {
        if (dist.count(succ)) continue;
        dist[succ] = d + 1;
        next.push_back(succ);
      }
    }
    frontier = std::move(next);
  }
  truncated = false;
  for (const auto& [fp, d] : dist) {
    seen.insert(fp);
    if (d < max_depth && graph.at(fp).over_bound) truncated = true;
    if (d == max_depth && graph.at(fp).fires) truncated = true;
  }
}

}  // namespace testgen
