// Copyright 2026 The eamod Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "eamod/siting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

#include "eamod/errors.hpp"
#include "eamod/graph_io.hpp"

namespace eamod {

namespace {
bool same_length(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

bool weakly_connected(const IsoEnergyGraph& g) {
  std::vector<std::pair<int, int>> both;
  both.reserve(2 * g.arcs.size());
  for (const auto& a : g.arcs) {
    both.emplace_back(a.tail, a.head);
    both.emplace_back(a.head, a.tail);
  }
  return is_strongly_connected(g.num_nodes(), both);
}
}  // namespace

CentralityScores betweenness(const IsoEnergyGraph& iso, CentralityWeight weight) {
  // Pairs without a path contribute nothing; only a split graph is refused.
  if (!weakly_connected(iso)) throw ValidationError("betweenness needs a connected graph");
  const int n = iso.num_nodes();
  std::vector<std::vector<std::pair<int, double>>> out(n);
  for (const auto& a : iso.arcs) {
    const double w = weight == CentralityWeight::kEnergy ? a.k : a.travel_time_s;
    if (!(w > 0)) throw ValidationError("betweenness needs positive arc weights");
    out[a.tail].emplace_back(a.head, w);
  }

  CentralityScores cb(n, 0.0);
  std::vector<double> dist(n), sigma(n), delta(n);
  std::vector<std::vector<int>> pred(n);
  std::vector<int> order;
  using Item = std::pair<double, int>;
  for (int s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), std::numeric_limits<double>::infinity());
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    for (auto& p : pred) p.clear();
    order.clear();
    std::vector<char> done(n, 0);
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[s] = 0.0;
    sigma[s] = 1.0;
    heap.emplace(0.0, s);
    while (!heap.empty()) {
      const auto [d, v] = heap.top();
      heap.pop();
      if (done[v] || d > dist[v]) continue;
      done[v] = 1;
      order.push_back(v);
      for (const auto& [w, len] : out[v]) {
        if (done[w]) continue;
        const double nd = dist[v] + len;
        if (std::isfinite(dist[w]) && same_length(nd, dist[w])) {
          sigma[w] += sigma[v];
          pred[w].push_back(v);
        } else if (nd < dist[w]) {
          dist[w] = nd;
          sigma[w] = sigma[v];
          pred[w].assign(1, v);
          heap.emplace(nd, w);
        }
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const int w = *it;
      for (int v : pred[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      if (w != s) cb[w] += delta[w];
    }
  }
  return cb;
}

std::vector<int> heuristic_siting(const CentralityScores& scores, int n) {
  std::vector<int> all(scores.size());
  std::iota(all.begin(), all.end(), 0);
  return heuristic_siting(scores, n, all);
}

std::vector<int> heuristic_siting(const CentralityScores& scores, int n,
                                  std::span<const int> candidates) {
  if (n < 0) throw ConfigError("station count must be non-negative");
  std::vector<int> order(candidates.begin(), candidates.end());
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;
  });
  order.resize(std::min<std::size_t>(order.size(), n));
  std::sort(order.begin(), order.end());
  return order;
}

std::string format_scores(const CentralityScores& scores) {
  std::string out = "geo_index,score\n";
  for (std::size_t g = 0; g < scores.size(); ++g) {
    out += std::to_string(g) + ',' + format_double(scores[g]) + '\n';
  }
  return out;
}

}  // namespace eamod
