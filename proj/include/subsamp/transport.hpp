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

#ifndef SUBSAMP_TRANSPORT_HPP_
#define SUBSAMP_TRANSPORT_HPP_

#include <cstdint>
#include <vector>

namespace subsamp {

// Dense min-cost transport between non-negative supplies and demands with
// equal totals, solved by successive shortest paths with potentials. Costs
// must be non-negative and finite on allowed arcs. Deterministic: arcs are
// scanned in index order and the priority queue breaks ties by node id.
struct TransportSolution {
  // flow[i][j] >= 0; row i ships supply i, column j fills demand j.
  std::vector<std::vector<double>> flow;
  double value = 0.0;    // sum flow[i][j] * cost[i][j].
  double routed = 0.0;   // total shipped mass.
  bool complete = false; // routed covers the total within 1e-9.
  // Worst complementary-slackness violation of the final potentials;
  // near-zero certifies optimality.
  double slackness = 0.0;
};

// allowed == nullptr means every arc is usable. Infinite or NaN costs on
// allowed arcs are rejected (kBadParams).
TransportSolution solve_min_cost_transport(
    const std::vector<double>& supply, const std::vector<double>& demand,
    const std::vector<std::vector<double>>& cost,
    const std::vector<std::vector<std::uint8_t>>* allowed = nullptr);

}  // namespace subsamp

#endif  // SUBSAMP_TRANSPORT_HPP_
