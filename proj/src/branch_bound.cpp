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

#include "eamod/branch_bound.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <memory>
#include <ostream>
#include <queue>

namespace eamod {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Node {
  long id = 0;
  double bound = -kInf;
  std::vector<double> lo;  // per integer column
  std::vector<double> hi;
  std::shared_ptr<const Basis> basis;
};

struct WorseNode {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.id > b.id;
  }
};

}  // namespace

BranchBoundResult branch_and_bound(const LpModel& lp, const BranchBoundOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };

  std::vector<int> ints;
  for (int j = 0; j < lp.cols(); ++j) {
    if (j < static_cast<int>(lp.integer.size()) && lp.integer[j]) ints.push_back(j);
  }
  LpModel work = lp;
  BranchBoundResult res;
  double incumbent = kInf;
  auto tolerance = [&](double v) { return opt.opt_tol * std::max(1.0, std::abs(v)); };

  std::priority_queue<Node, std::vector<Node>, WorseNode> open;
  {
    Node root;
    for (int j : ints) {
      root.lo.push_back(std::ceil(lp.col_lower[j] - opt.int_tol));
      root.hi.push_back(std::floor(lp.col_upper[j] + opt.int_tol));
    }
    open.push(std::move(root));
  }
  long next_id = 1;

  auto apply = [&](const std::vector<double>& lo, const std::vector<double>& hi) {
    for (std::size_t k = 0; k < ints.size(); ++k) {
      work.col_lower[ints[k]] = lo[k];
      work.col_upper[ints[k]] = hi[k];
    }
  };
  auto global_bound = [&] { return open.empty() ? incumbent : std::min(open.top().bound, incumbent); };
  auto accept = [&](const SimplexResult& r) {
    if (r.objective < incumbent) {
      incumbent = r.objective;
      res.has_incumbent = true;
      res.objective = r.objective;
      res.x = r.x;
      for (int j : ints) res.x[j] = std::round(res.x[j]);
      res.duals = r.duals;
      if (opt.log) *opt.log << "bb: node " << res.nodes << " incumbent " << incumbent << '\n';
    }
  };
  auto rounding = [&](const Eigen::VectorXd& relax, Eigen::VectorXd& vals) {
    if (opt.rounding) return opt.rounding(relax, vals);
    vals.resize(static_cast<int>(ints.size()));
    for (std::size_t k = 0; k < ints.size(); ++k) vals[k] = std::round(relax[ints[k]]);
    return true;
  };

  bool limit = false;
  while (!open.empty()) {
    if (res.has_incumbent && open.top().bound >= incumbent - tolerance(incumbent)) break;
    if (res.nodes >= opt.max_nodes || elapsed() > opt.time_limit_s) {
      limit = true;
      break;
    }
    Node node = open.top();
    open.pop();
    ++res.nodes;

    apply(node.lo, node.hi);
    SimplexOptions lp_opt = opt.lp;
    lp_opt.time_limit_s = std::min(lp_opt.time_limit_s, std::max(0.0, opt.time_limit_s - elapsed()));
    const SimplexResult r = solve_simplex(work, lp_opt, node.basis.get());
    res.simplex_iterations += r.iterations;

    if (r.status == LpStatus::kIterationLimit || r.status == LpStatus::kTimeLimit) {
      open.push(std::move(node));
      limit = true;
      break;
    }
    if (r.status == LpStatus::kUnbounded) {
      res.status = MipStatus::kUnbounded;
      res.best_bound = -kInf;
      return res;
    }
    if (r.status == LpStatus::kOptimal) {
      const double bound = std::max(r.objective, node.bound);
      if (!(res.has_incumbent && bound >= incumbent - tolerance(incumbent))) {
        int branch = -1;
        double worst = opt.int_tol;
        for (std::size_t k = 0; k < ints.size(); ++k) {
          const double v = r.x[ints[k]];
          const double frac = std::abs(v - std::round(v));
          if (frac > worst + 1e-12) {
            worst = frac;
            branch = static_cast<int>(k);
          }
        }
        if (branch < 0) {
          accept(r);
        } else {
          if (res.nodes == 1 || (opt.heuristic_every > 0 && res.nodes % opt.heuristic_every == 0)) {
            Eigen::VectorXd vals;
            if (rounding(r.x, vals) && vals.size() == static_cast<int>(ints.size())) {
              bool inside = true;
              std::vector<double> lo(ints.size()), hi(ints.size());
              for (std::size_t k = 0; k < ints.size(); ++k) {
                lo[k] = hi[k] = vals[k];
                if (vals[k] < node.lo[k] || vals[k] > node.hi[k]) inside = false;
              }
              if (inside) {
                apply(lo, hi);
                const SimplexResult h = solve_simplex(work, lp_opt, &r.basis);
                res.simplex_iterations += h.iterations;
                if (h.status == LpStatus::kOptimal) accept(h);
              }
            }
          }
          auto basis = std::make_shared<const Basis>(r.basis);
          const double v = r.x[ints[branch]];
          Node down{next_id++, bound, node.lo, node.hi, basis};
          down.hi[branch] = std::floor(v);
          Node up{next_id++, bound, node.lo, node.hi, basis};
          up.lo[branch] = std::ceil(v);
          open.push(std::move(down));
          open.push(std::move(up));
        }
      }
    }
    res.trace.push_back({res.nodes, incumbent, global_bound()});
  }

  res.best_bound = res.has_incumbent ? global_bound() : (open.empty() ? kInf : open.top().bound);
  if (res.has_incumbent) {
    res.gap = std::max(0.0, incumbent - res.best_bound) / std::max(1.0, std::abs(incumbent));
  } else {
    res.gap = kInf;
  }
  if (limit) {
    res.status = MipStatus::kLimitReached;
  } else {
    res.status = res.has_incumbent ? MipStatus::kOptimal : MipStatus::kInfeasible;
  }
  if (res.trace.empty() || res.trace.back().bound != res.best_bound) {
    res.trace.push_back({res.nodes, incumbent, res.has_incumbent ? res.best_bound : global_bound()});
  }
  return res;
}

}  // namespace eamod
