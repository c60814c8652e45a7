// Copyright 2026 The subsamp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "subsamp/transport.hpp"

#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include "subsamp/error.hpp"
#include "subsamp/numeric.hpp"

namespace subsamp {

namespace {

struct Edge {
  int to;
  double cap;
  double cost;
  int rev;  // Index of the reverse edge in graph[to].
};

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

TransportSolution solve_min_cost_transport(
    const std::vector<double>& supply, const std::vector<double>& demand,
    const std::vector<std::vector<double>>& cost,
    const std::vector<std::vector<std::uint8_t>>* allowed) {
  const int nl = static_cast<int>(supply.size());
  const int nr = static_cast<int>(demand.size());
  if (static_cast<int>(cost.size()) != nl) {
    throw Error(Errc::kBadParams, "transport: cost rows mismatch supply");
  }
  StableSum supply_total;
  for (int i = 0; i < nl; ++i) {
    if (!(supply[static_cast<std::size_t>(i)] >= 0.0)) {
      throw Error(Errc::kNegativeMass, "transport: negative supply");
    }
    if (static_cast<int>(cost[static_cast<std::size_t>(i)].size()) != nr) {
      throw Error(Errc::kBadParams, "transport: cost columns mismatch demand");
    }
    supply_total.add(supply[static_cast<std::size_t>(i)]);
  }
  for (int j = 0; j < nr; ++j) {
    if (!(demand[static_cast<std::size_t>(j)] >= 0.0)) {
      throw Error(Errc::kNegativeMass, "transport: negative demand");
    }
  }
  const double total = supply_total.value();
  const double floor = 1e-15 * std::max(1.0, total);

  // Node ids: source, left block, right block, sink.
  const int s = 0;
  const int t = nl + nr + 1;
  const int node_count = t + 1;
  std::vector<std::vector<Edge>> graph(static_cast<std::size_t>(node_count));
  auto add_edge = [&](int u, int v, double cap, double c) {
    graph[static_cast<std::size_t>(u)].push_back(
        {v, cap, c, static_cast<int>(graph[static_cast<std::size_t>(v)].size())});
    graph[static_cast<std::size_t>(v)].push_back(
        {u, 0.0, -c,
         static_cast<int>(graph[static_cast<std::size_t>(u)].size()) - 1});
  };
  for (int i = 0; i < nl; ++i) {
    add_edge(s, 1 + i, supply[static_cast<std::size_t>(i)], 0.0);
  }
  for (int i = 0; i < nl; ++i) {
    for (int j = 0; j < nr; ++j) {
      if (allowed && !(*allowed)[static_cast<std::size_t>(i)]
                              [static_cast<std::size_t>(j)]) {
        continue;
      }
      double c = cost[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (!(c >= 0.0) || !std::isfinite(c)) {
        throw Error(Errc::kBadParams,
                    "transport: arc costs must be finite and >= 0");
      }
      add_edge(1 + i, 1 + nl + j, kInf, c);
    }
  }
  for (int j = 0; j < nr; ++j) {
    add_edge(1 + nl + j, t, demand[static_cast<std::size_t>(j)], 0.0);
  }

  std::vector<double> pot(static_cast<std::size_t>(node_count), 0.0);
  std::vector<double> dist(static_cast<std::size_t>(node_count));
  std::vector<int> prev_node(static_cast<std::size_t>(node_count));
  std::vector<int> prev_edge(static_cast<std::size_t>(node_count));
  double routed = 0.0;
  const int iteration_cap = 50 * node_count;

  for (int round = 0; round < iteration_cap; ++round) {
    if (routed >= total - floor) break;
    // Dijkstra on reduced costs; ties broken by node id for determinism.
    std::fill(dist.begin(), dist.end(), kInf);
    dist[static_cast<std::size_t>(s)] = 0.0;
    using Key = std::pair<double, int>;
    std::priority_queue<Key, std::vector<Key>, std::greater<Key>> heap;
    heap.push({0.0, s});
    while (!heap.empty()) {
      auto [d, u] = heap.top();
      heap.pop();
      if (d > dist[static_cast<std::size_t>(u)]) continue;
      const auto& adj = graph[static_cast<std::size_t>(u)];
      for (int e = 0; e < static_cast<int>(adj.size()); ++e) {
        const Edge& edge = adj[static_cast<std::size_t>(e)];
        if (edge.cap <= floor) continue;
        double nd = d + edge.cost + pot[static_cast<std::size_t>(u)] -
                    pot[static_cast<std::size_t>(edge.to)];
        // Clamp tiny negative reduced costs from rounding.
        if (nd < d) nd = d;
        if (nd < dist[static_cast<std::size_t>(edge.to)]) {
          dist[static_cast<std::size_t>(edge.to)] = nd;
          prev_node[static_cast<std::size_t>(edge.to)] = u;
          prev_edge[static_cast<std::size_t>(edge.to)] = e;
          heap.push({nd, edge.to});
        }
      }
    }
    if (!(dist[static_cast<std::size_t>(t)] < kInf)) break;
    for (int v = 0; v < node_count; ++v) {
      if (dist[static_cast<std::size_t>(v)] < kInf) {
        pot[static_cast<std::size_t>(v)] += dist[static_cast<std::size_t>(v)];
      } else {
        pot[static_cast<std::size_t>(v)] += dist[static_cast<std::size_t>(t)];
      }
    }
    // Bottleneck along the shortest path.
    double push = kInf;
    for (int v = t; v != s; v = prev_node[static_cast<std::size_t>(v)]) {
      const Edge& edge =
          graph[static_cast<std::size_t>(prev_node[static_cast<std::size_t>(v)])]
               [static_cast<std::size_t>(prev_edge[static_cast<std::size_t>(v)])];
      push = std::min(push, edge.cap);
    }
    if (!(push > floor)) break;
    push = std::min(push, total - routed);
    for (int v = t; v != s; v = prev_node[static_cast<std::size_t>(v)]) {
      Edge& edge =
          graph[static_cast<std::size_t>(prev_node[static_cast<std::size_t>(v)])]
               [static_cast<std::size_t>(prev_edge[static_cast<std::size_t>(v)])];
      edge.cap -= push;
      graph[static_cast<std::size_t>(edge.to)][static_cast<std::size_t>(edge.rev)]
          .cap += push;
    }
    routed += push;
  }

  TransportSolution sol;
  sol.flow.assign(static_cast<std::size_t>(nl),
                  std::vector<double>(static_cast<std::size_t>(nr), 0.0));
  StableSum value;
  StableSum shipped;
  double worst = 0.0;
  for (int i = 0; i < nl; ++i) {
    for (const Edge& edge : graph[static_cast<std::size_t>(1 + i)]) {
      if (edge.to < 1 + nl || edge.to >= 1 + nl + nr) continue;
      // All arcs into the right block here are forward transport arcs; their
      // flow is the reverse residual.
      int j = edge.to - 1 - nl;
      double f = graph[static_cast<std::size_t>(edge.to)]
                      [static_cast<std::size_t>(edge.rev)].cap;
      double rc = edge.cost + pot[static_cast<std::size_t>(1 + i)] -
                  pot[static_cast<std::size_t>(edge.to)];
      // Complementary slackness: usable arcs need rc >= 0, loaded arcs rc
      // <= 0.
      if (rc < 0.0) worst = std::max(worst, -rc);
      if (f <= floor) continue;
      worst = std::max(worst, rc > 0.0 ? rc : 0.0);
      sol.flow[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = f;
      value.add(f * edge.cost);
      shipped.add(f);
    }
  }
  sol.value = value.value();
  sol.routed = shipped.value();
  sol.complete = sol.routed >= total - 1e-9;
  sol.slackness = worst;
  return sol;
}

}  // namespace subsamp
