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


#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <set>
#include <tuple>

#include "eamod/scenario.hpp"

namespace oracle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = 1e-9;

class Tableau {
 public:
  Tableau(Eigen::MatrixXd t, std::vector<int> basis) : t_(std::move(t)), basis_(std::move(basis)) {}

  // Returns false when the phase is unbounded.
  bool run(const Eigen::VectorXd& cost, const std::vector<char>& allowed, long* pivots) {
    const int m = static_cast<int>(t_.rows());
    const int n = static_cast<int>(t_.cols()) - 1;
    while (true) {
      int enter = -1;
      for (int j = 0; j < n && enter < 0; ++j) {
        if (!allowed[j]) continue;
        double z = cost[j];
        for (int i = 0; i < m; ++i) z -= cost[basis_[i]] * t_(i, j);
        if (z < -kEps) enter = j;
      }
      if (enter < 0) return true;
      int leave = -1;
      double best = kInf;
      for (int i = 0; i < m; ++i) {
        if (t_(i, enter) <= kEps) continue;
        const double ratio = t_(i, n) / t_(i, enter);
        if (ratio < best - 1e-12 || (ratio <= best + 1e-12 && leave >= 0 && basis_[i] < basis_[leave])) {
          if (ratio < best - 1e-12) best = ratio;
          leave = i;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
      ++*pivots;
    }
  }

  void pivot(int r, int c) {
    t_.row(r) /= t_(r, c);
    for (int i = 0; i < t_.rows(); ++i) {
      if (i != r && t_(i, c) != 0.0) t_.row(i) -= t_(i, c) * t_.row(r);
    }
    basis_[r] = c;
  }

  Eigen::MatrixXd& t() { return t_; }
  std::vector<int>& basis() { return basis_; }

 private:
  Eigen::MatrixXd t_;
  std::vector<int> basis_;
};

}  // namespace

DenseResult solve_dense_bland(const DenseLp& lp) {
  const int m = static_cast<int>(lp.A.rows());
  const int n = static_cast<int>(lp.A.cols());
  std::vector<Sense> sense = lp.sense;
  Eigen::MatrixXd A = lp.A;
  Eigen::VectorXd b = lp.b;
  for (int i = 0; i < m; ++i) {
    if (b[i] < 0) {
      A.row(i) *= -1.0;
      b[i] = -b[i];
      if (sense[i] == Sense::kLe) sense[i] = Sense::kGe;
      else if (sense[i] == Sense::kGe) sense[i] = Sense::kLe;
    }
  }
  int slacks = 0, arts = 0;
  for (auto s : sense) {
    if (s != Sense::kEq) ++slacks;
    if (s != Sense::kLe) ++arts;
  }
  const int total = n + slacks + arts;
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, total + 1);
  std::vector<int> basis(m);
  t.leftCols(n) = A;
  t.col(total) = b;
  int s = n, a = n + slacks;
  for (int i = 0; i < m; ++i) {
    if (sense[i] == Sense::kLe) {
      t(i, s) = 1.0;
      basis[i] = s++;
    } else {
      if (sense[i] == Sense::kGe) t(i, s++) = -1.0;
      t(i, a) = 1.0;
      basis[i] = a++;
    }
  }

  DenseResult out;
  Tableau tab(std::move(t), std::move(basis));
  std::vector<char> all(total, 1);
  Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(total);
  phase1.tail(arts).setOnes();
  tab.run(phase1, all, &out.pivots);
  double infeas = 0.0;
  for (int i = 0; i < m; ++i) {
    if (tab.basis()[i] >= n + slacks) infeas += tab.t()(i, total);
  }
  if (infeas > 1e-7) {
    out.status = DenseStatus::kInfeasible;
    return out;
  }
  // Drive zero-level artificials out of the basis where a pivot exists;
  // rows without one are redundant and never move again.
  for (int i = 0; i < m; ++i) {
    if (tab.basis()[i] < n + slacks) continue;
    for (int j = 0; j < n + slacks; ++j) {
      if (std::abs(tab.t()(i, j)) > kEps) {
        tab.pivot(i, j);
        ++out.pivots;
        break;
      }
    }
  }
  std::vector<char> allowed(total, 1);
  for (int j = n + slacks; j < total; ++j) allowed[j] = 0;
  Eigen::VectorXd phase2 = Eigen::VectorXd::Zero(total);
  phase2.head(n) = lp.c;
  if (!tab.run(phase2, allowed, &out.pivots)) {
    out.status = DenseStatus::kUnbounded;
    return out;
  }
  out.status = DenseStatus::kOptimal;
  out.x = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < m; ++i) {
    if (tab.basis()[i] < n) out.x[tab.basis()[i]] = tab.t()(i, total);
  }
  out.objective = lp.c.dot(out.x);
  return out;
}

double simple_path_min_energy(const eamod::RoadGraph& g, int s, int t) {
  if (s == t) return 0.0;
  double best = kInf;
  std::vector<char> on_path(g.num_nodes(), 0);
  std::function<void(int, double)> dfs = [&](int v, double e) {
    if (e >= best) return;
    if (v == t) {
      best = e;
      return;
    }
    on_path[v] = 1;
    for (int a : g.out_arcs()[v]) {
      const auto& arc = g.arcs()[a];
      if (!on_path[arc.head]) dfs(arc.head, e + arc.energy_wh);
    }
    on_path[v] = 0;
  };
  dfs(s, 0.0);
  return best;
}

std::vector<double> brute_betweenness(int n, const std::vector<std::tuple<int, int, double>>& arcs) {
  Eigen::MatrixXd dist = Eigen::MatrixXd::Constant(n, n, kInf);
  for (int v = 0; v < n; ++v) dist(v, v) = 0.0;
  for (const auto& [u, v, w] : arcs) dist(u, v) = std::min(dist(u, v), w);
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) dist(i, j) = std::min(dist(i, j), dist(i, k) + dist(k, j));
    }
  }
  std::vector<std::vector<std::pair<int, double>>> out(n);
  for (const auto& [u, v, w] : arcs) out[u].emplace_back(v, w);

  std::vector<double> score(n, 0.0);
  std::vector<int> path;
  for (int s = 0; s < n; ++s) {
    for (int t = 0; t < n; ++t) {
      if (s == t || dist(s, t) == kInf) continue;
      double total = 0.0;
      std::vector<double> through(n, 0.0);
      std::function<void(int, double)> walk = [&](int v, double len) {
        if (v == t) {
          total += 1.0;
          for (std::size_t i = 1; i < path.size(); ++i) through[path[i]] += 1.0;
          return;
        }
        for (const auto& [h, w] : out[v]) {
          if (len + w + dist(h, t) > dist(s, t) + 1e-9) continue;
          path.push_back(h);
          walk(h, len + w);
          path.pop_back();
        }
      };
      path.assign(1, s);
      walk(s, 0.0);
      for (int v = 0; v < n; ++v) {
        if (v != s && v != t) score[v] += through[v] / total;
      }
    }
  }
  return score;
}

PathOracle path_oracle(const eamod::LayeredGraph& lg, const eamod::DemandSet& d,
                       const eamod::ScenarioParams& p) {
  using eamod::ArcKind;
  const int L = lg.num_layers();
  const int hubs = lg.num_geo() * L;
  const int M = d.size();
  const bool joint = p.mode == eamod::SitingMode::kJoint;
  const auto& cands = lg.candidate_stations();
  const int C = joint ? static_cast<int>(cands.size()) : 0;
  const int first_charge = lg.charging_begin();
  const int num_charge = lg.num_charging_arcs();

  struct UserPath {
    int demand, from, to;
    double hours;
  };
  struct RebalPath {
    int from, to;
    double hours;
    std::vector<int> charging;
  };
  std::vector<UserPath> users;
  std::vector<RebalPath> rebal;

  for (int m = 0; m < M; ++m) {
    const auto& r = d.requests[m];
    for (int l = 0; l < L; ++l) {
      const int start = lg.layer_node(r.origin, l);
      // Road arcs always lose charge, so every walk here is a simple path.
      std::function<void(int, double)> walk = [&](int v, double h) {
        if (v / L == r.destination) users.push_back({m, start, v, h});
        for (int a : lg.out_arcs(v)) {
          if (lg.arc(a).kind != ArcKind::kRoad) continue;
          walk(lg.arc(a).head, h + lg.arc(a).travel_time_s / 3600.0);
        }
      };
      walk(start, 0.0);
    }
  }

  std::vector<char> on_path(hubs, 0);
  std::vector<int> used;
  for (int s = 0; s < hubs; ++s) {
    std::function<void(int, double)> walk = [&](int v, double h) {
      rebal.push_back({s, v, h, used});
      on_path[v] = 1;
      for (int a : lg.out_arcs(v)) {
        const auto& arc = lg.arc(a);
        if (arc.kind != ArcKind::kRoad && arc.kind != ArcKind::kCharging) continue;
        if (on_path[arc.head]) continue;
        if (arc.kind == ArcKind::kCharging) used.push_back(a);
        walk(arc.head, h + arc.travel_time_s / 3600.0);
        if (arc.kind == ArcKind::kCharging) used.pop_back();
      }
      on_path[v] = 0;
    };
    walk(s, 0.0);
  }

  const int nu = static_cast<int>(users.size());
  const int nr = static_cast<int>(rebal.size());
  const int cols = nu + nr + C;
  const int rows = M + 2 * hubs + num_charge + (C > 0 ? 1 + C : 0);
  DenseLp lp;
  lp.A = Eigen::MatrixXd::Zero(rows, cols);
  lp.b = Eigen::VectorXd::Zero(rows);
  lp.c = Eigen::VectorXd::Zero(cols);
  lp.sense.assign(rows, Sense::kEq);
  const int hand_in = M, hand_out = M + hubs, cap_row = M + 2 * hubs;
  for (int m = 0; m < M; ++m) lp.b[m] = d.requests[m].rate_per_hour;
  for (int j = 0; j < nu; ++j) {
    const auto& u = users[j];
    lp.c[j] = u.hours;
    lp.A(u.demand, j) = 1.0;
    lp.A(hand_in + u.to, j) += 1.0;
    lp.A(hand_out + u.from, j) -= 1.0;
  }
  for (int q = 0; q < nr; ++q) {
    const auto& r = rebal[q];
    const int j = nu + q;
    lp.c[j] = r.hours;
    lp.A(hand_in + r.from, j) -= 1.0;
    lp.A(hand_out + r.to, j) += 1.0;
    for (int a : r.charging) lp.A(cap_row + a - first_charge, j) += 1.0;
  }
  const double cap = p.charging_arc_capacity();
  for (int a = 0; a < num_charge; ++a) {
    const int row = cap_row + a;
    lp.sense[row] = Sense::kLe;
    const int g = lg.arc(first_charge + a).geo;
    if (joint) {
      lp.A(row, nu + nr + lg.candidate_slot(g)) = -cap;
    } else {
      const bool sited = std::find(p.fixed_siting.begin(), p.fixed_siting.end(), g) !=
                         p.fixed_siting.end();
      lp.b[row] = sited ? cap : 0.0;
    }
  }
  if (C > 0) {
    const int budget = cap_row + num_charge;
    lp.sense[budget] = Sense::kLe;
    lp.b[budget] = p.max_stations;
    for (int s = 0; s < C; ++s) {
      lp.A(budget, nu + nr + s) = 1.0;
      lp.sense[budget + 1 + s] = Sense::kLe;
      lp.A(budget + 1 + s, nu + nr + s) = 1.0;
      lp.b[budget + 1 + s] = 1.0;
    }
  }

  PathOracle out;
  out.user_paths = nu;
  out.rebalancing_paths = nr;
  out.lp = solve_dense_bland(lp);
  return out;
}

MicroInstance micro_instance(std::uint64_t seed, int max_geo, int max_layers, int max_requests,
                             int max_candidates, int max_n) {
  std::mt19937_64 rng(seed);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  eamod::RandomIsoOptions ro;
  ro.nodes = pick(3, std::max(3, max_geo));
  ro.arcs = std::min(ro.nodes * (ro.nodes - 1), 2 * ro.nodes + 2 * pick(0, 1));
  ro.max_multiple = 2;
  ro.metres_per_unit = 2000.0;
  const auto iso = eamod::random_iso_graph(ro, rng());
  const int L = pick(3, std::max(3, max_layers));
  std::vector<int> nodes(ro.nodes);
  for (int g = 0; g < ro.nodes; ++g) nodes[g] = g;
  std::shuffle(nodes.begin(), nodes.end(), rng);
  std::vector<int> cands(nodes.begin(), nodes.begin() + pick(1, std::min(max_candidates, ro.nodes)));
  std::sort(cands.begin(), cands.end());

  MicroInstance mi;
  mi.graph = eamod::build_layered_graph(iso, L * ro.unit_energy_wh, cands, 50'000.0);
  const int requests = std::min(pick(1, max_requests), ro.nodes * (ro.nodes - 1));
  mi.demand = eamod::random_demand(ro.nodes, requests, 0.5, 2.0, rng());
  mi.params.max_stations = pick(1, max_n);
  mi.params.station_capacity = 1.0;
  mi.params.charge_rate_layers_per_hour = std::uniform_real_distribution<double>(2.0, 12.0)(rng);
  return mi;
}

double row_residual(const eamod::ProblemInstance& pi, const Eigen::VectorXd& x) {
  const Eigen::VectorXd act = pi.matrix * x;
  double worst = 0.0;
  for (int r = 0; r < pi.num_rows(); ++r) {
    const double diff = act[r] - pi.rows[r].rhs;
    double v = 0.0;
    switch (pi.rows[r].sense) {
      case eamod::RowSense::kEqual: v = std::abs(diff); break;
      case eamod::RowSense::kLessEqual: v = std::max(0.0, diff); break;
      case eamod::RowSense::kGreaterEqual: v = std::max(0.0, -diff); break;
    }
    worst = std::max(worst, v);
  }
  return worst;
}

}  // namespace oracle
