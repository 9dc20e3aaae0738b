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

#include "eamod/simplex.hpp"

#include <Eigen/SparseLU>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>

#include "eamod/errors.hpp"

namespace eamod {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

class RevisedSimplex {
 public:
  RevisedSimplex(const LpModel& lp, const SimplexOptions& opt)
      : lp_(lp), opt_(opt), m_(lp.rows()), n_(lp.cols()) {
    lower_.resize(n_ + m_);
    upper_.resize(n_ + m_);
    cost_ = Eigen::VectorXd::Zero(n_ + m_);
    lower_.head(n_) = lp.col_lower;
    upper_.head(n_) = lp.col_upper;
    lower_.tail(m_) = lp.row_lower;
    upper_.tail(m_) = lp.row_upper;
    cost_.head(n_) = lp.cost;
    for (int j = 0; j < n_ + m_; ++j) {
      if (lower_[j] > upper_[j]) infeasible_bounds_ = true;
    }
  }

  SimplexResult run(const Basis* warm);

 private:
  enum class Bound { kLower, kUpper };

  double nonbasic_value(int j) const {
    switch (state_[j]) {
      case VarState::kAtLower: return lower_[j];
      case VarState::kAtUpper: return upper_[j];
      default: return 0.0;
    }
  }
  VarState resting_state(int j, double near) const {
    const bool lo = std::isfinite(lower_[j]);
    const bool up = std::isfinite(upper_[j]);
    if (lo && up) {
      return std::abs(near - lower_[j]) <= std::abs(near - upper_[j]) ? VarState::kAtLower
                                                                       : VarState::kAtUpper;
    }
    if (lo) return VarState::kAtLower;
    if (up) return VarState::kAtUpper;
    return VarState::kAtZero;
  }

  void slack_basis();
  void adopt(const Basis& b);
  bool factorize();
  void ftran(Eigen::VectorXd& v) const;
  void btran(Eigen::VectorXd& v) const;
  void compute_primal();
  void load_column(int j, Eigen::VectorXd& out) const;
  double structural_objective() const { return lp_.cost.dot(x_.head(n_)); }
  void finish(SimplexResult& res);
  void push_eta(int row, const Eigen::VectorXd& alpha);
  void refresh();
  enum class DualOutcome { kPrimalFeasible, kInfeasible, kGaveUp };
  DualOutcome dual_phase(SimplexResult& res, const std::chrono::steady_clock::time_point& start);

  const LpModel& lp_;
  const SimplexOptions& opt_;
  const int m_;
  const int n_;
  bool infeasible_bounds_ = false;
  Eigen::VectorXd lower_, upper_, cost_;
  std::vector<int> head_;
  std::vector<VarState> state_;
  Eigen::VectorXd x_;
  std::vector<double> weight_;  // devex reference weights

  mutable Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu_;
  struct Eta {
    int row;
    double pivot;
    std::vector<int> idx;
    std::vector<double> val;
  };
  std::vector<Eta> etas_;
  int refactorizations_ = 0;
};

void RevisedSimplex::slack_basis() {
  head_.resize(m_);
  state_.assign(n_ + m_, VarState::kAtLower);
  for (int j = 0; j < n_; ++j) state_[j] = resting_state(j, 0.0);
  for (int i = 0; i < m_; ++i) {
    head_[i] = n_ + i;
    state_[n_ + i] = VarState::kBasic;
  }
}

void RevisedSimplex::adopt(const Basis& b) {
  if (static_cast<int>(b.heads.size()) != m_ || static_cast<int>(b.state.size()) != n_ + m_) {
    slack_basis();
    return;
  }
  head_ = b.heads;
  state_ = b.state;
  int basic = 0;
  for (int j = 0; j < n_ + m_; ++j) {
    if (state_[j] == VarState::kBasic) {
      ++basic;
      continue;
    }
    // Re-seat nonbasic variables whose bound disappeared or moved.
    if ((state_[j] == VarState::kAtLower && !std::isfinite(lower_[j])) ||
        (state_[j] == VarState::kAtUpper && !std::isfinite(upper_[j])) ||
        (state_[j] == VarState::kAtZero && (std::isfinite(lower_[j]) || std::isfinite(upper_[j])))) {
      state_[j] = resting_state(j, 0.0);
    }
  }
  for (int h : head_) {
    if (h < 0 || h >= n_ + m_ || state_[h] != VarState::kBasic) {
      slack_basis();
      return;
    }
  }
  if (basic != m_) slack_basis();
}

void RevisedSimplex::load_column(int j, Eigen::VectorXd& out) const {
  out.setZero(m_);
  if (j < n_) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(lp_.A, j); it; ++it) out[it.row()] = it.value();
  } else {
    out[j - n_] = -1.0;
  }
}

bool RevisedSimplex::factorize() {
  etas_.clear();
  ++refactorizations_;
  std::vector<Eigen::Triplet<double>> trip;
  for (int p = 0; p < m_; ++p) {
    const int j = head_[p];
    if (j < n_) {
      for (Eigen::SparseMatrix<double>::InnerIterator it(lp_.A, j); it; ++it) {
        trip.emplace_back(static_cast<int>(it.row()), p, it.value());
      }
    } else {
      trip.emplace_back(j - n_, p, -1.0);
    }
  }
  Eigen::SparseMatrix<double> B(m_, m_);
  B.setFromTriplets(trip.begin(), trip.end());
  B.makeCompressed();
  lu_.analyzePattern(B);
  lu_.factorize(B);
  return lu_.info() == Eigen::Success;
}

void RevisedSimplex::ftran(Eigen::VectorXd& v) const {
  if (m_ == 0) return;
  v = lu_.solve(v);
  for (const auto& e : etas_) {
    const double t = v[e.row] / e.pivot;
    v[e.row] = t;
    if (t == 0.0) continue;
    for (std::size_t k = 0; k < e.idx.size(); ++k) v[e.idx[k]] -= e.val[k] * t;
  }
}

void RevisedSimplex::btran(Eigen::VectorXd& v) const {
  if (m_ == 0) return;
  for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
    double s = v[it->row];
    for (std::size_t k = 0; k < it->idx.size(); ++k) s -= it->val[k] * v[it->idx[k]];
    v[it->row] = s / it->pivot;
  }
  Eigen::VectorXd w = lu_.transpose().solve(v);
  v = std::move(w);
}

void RevisedSimplex::compute_primal() {
  x_.resize(n_ + m_);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m_);
  for (int j = 0; j < n_ + m_; ++j) {
    if (state_[j] == VarState::kBasic) continue;
    const double v = nonbasic_value(j);
    x_[j] = v;
    if (v == 0.0) continue;
    if (j < n_) {
      for (Eigen::SparseMatrix<double>::InnerIterator it(lp_.A, j); it; ++it) {
        rhs[it.row()] -= it.value() * v;
      }
    } else {
      rhs[j - n_] += v;  // logical column is -e_i
    }
  }
  ftran(rhs);
  for (int p = 0; p < m_; ++p) x_[head_[p]] = rhs[p];
}

void RevisedSimplex::finish(SimplexResult& res) {
  Eigen::VectorXd y(m_);
  for (int p = 0; p < m_; ++p) y[p] = cost_[head_[p]];
  btran(y);
  res.x = x_.head(n_);
  res.row_activity = lp_.A * res.x;
  res.duals = y;
  res.reduced_costs = lp_.cost - lp_.A.transpose() * y;
  res.objective = structural_objective();
  res.basis.heads = head_;
  res.basis.state = state_;
  res.refactorizations = refactorizations_;
}

void RevisedSimplex::push_eta(int row, const Eigen::VectorXd& alpha) {
  Eta e{row, alpha[row], {}, {}};
  for (int p = 0; p < m_; ++p) {
    if (p != row && std::abs(alpha[p]) > 1e-14) {
      e.idx.push_back(p);
      e.val.push_back(alpha[p]);
    }
  }
  etas_.push_back(std::move(e));
}

void RevisedSimplex::refresh() {
  if (!factorize()) {
    if (opt_.log) *opt_.log << "simplex: singular basis, restarting from slack basis\n";
    slack_basis();
    factorize();
  }
  compute_primal();
}

// Dual simplex from a warm basis whose reduced costs still have the right
// signs, which is what a bound change in branch-and-bound leaves behind.
// Gives up (leaving the basis as is) when the basis is not dual feasible or
// the phase stalls; the primal loop then takes over.
RevisedSimplex::DualOutcome RevisedSimplex::dual_phase(SimplexResult& res,
                                const std::chrono::steady_clock::time_point& start) {
  const double tol = opt_.primal_tol;
  const double dtol = opt_.dual_tol;
  Eigen::VectorXd y(m_), rho(m_), alpha(m_), prow(n_);
  Eigen::VectorXd dj(n_ + m_);  // reduced costs, structurals then logicals
  std::vector<double> beta(m_, 1.0);  // dual devex row weights

  auto reduced_costs = [&] {
    for (int p = 0; p < m_; ++p) y[p] = cost_[head_[p]];
    btran(y);
    dj.head(n_) = lp_.cost - lp_.A.transpose() * y;
    dj.tail(m_) = y;
    for (int p = 0; p < m_; ++p) dj[head_[p]] = 0.0;
  };

  reduced_costs();
  bool flipped = false;
  for (int j = 0; j < n_ + m_; ++j) {
    if (state_[j] == VarState::kBasic || lower_[j] == upper_[j]) continue;
    const double v = dj[j];
    const bool boxed = std::isfinite(lower_[j]) && std::isfinite(upper_[j]);
    if (state_[j] == VarState::kAtLower && v < -dtol) {
      if (!boxed) return DualOutcome::kGaveUp;
      state_[j] = VarState::kAtUpper;
      flipped = true;
    } else if (state_[j] == VarState::kAtUpper && v > dtol) {
      if (!boxed) return DualOutcome::kGaveUp;
      state_[j] = VarState::kAtLower;
      flipped = true;
    } else if (state_[j] == VarState::kAtZero && std::abs(v) > dtol) {
      return DualOutcome::kGaveUp;
    }
  }
  if (flipped) compute_primal();

  const long budget = res.iterations + 20L * (m_ + 100);
  while (res.iterations < budget && res.iterations < opt_.iteration_limit) {
    if ((res.iterations & 63) == 0 &&
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() >
            opt_.time_limit_s) {
      return DualOutcome::kGaveUp;
    }
    // Leaving row: largest weighted bound violation.
    int r = -1;
    double worst = 0.0;
    for (int p = 0; p < m_; ++p) {
      const int j = head_[p];
      const double v = std::max(lower_[j] - x_[j], x_[j] - upper_[j]);
      if (v > tol && v * v / beta[p] > worst) {
        worst = v * v / beta[p];
        r = p;
      }
    }
    if (r < 0) return DualOutcome::kPrimalFeasible;
    const int out = head_[r];
    const bool to_lower = x_[out] < lower_[out];
    const double target = to_lower ? lower_[out] : upper_[out];

    rho.setZero();
    rho[r] = 1.0;
    btran(rho);
    prow.noalias() = lp_.A.transpose() * rho;
    auto row_entry = [&](int j) { return j < n_ ? prow[j] : -rho[j - n_]; };
    // Entering: the leaving row must move toward its bound, and the reduced
    // cost that hits zero first decides (Harris two-pass).
    auto eligible = [&](int j, double a) {
      if (state_[j] == VarState::kBasic || lower_[j] == upper_[j]) return false;
      if (std::abs(a) < opt_.pivot_tol) return false;
      const double up = to_lower ? -a : a;  // > 0: increasing x_j helps
      if (state_[j] == VarState::kAtLower) return up > 0;
      if (state_[j] == VarState::kAtUpper) return up < 0;
      return true;
    };
    double bound = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n_ + m_; ++j) {
      const double a = row_entry(j);
      if (eligible(j, a)) bound = std::min(bound, (std::abs(dj[j]) + dtol) / std::abs(a));
    }
    int q = -1;
    double best = 0.0;
    for (int j = 0; j < n_ + m_; ++j) {
      const double a = row_entry(j);
      if (!eligible(j, a)) continue;
      if (std::abs(dj[j]) / std::abs(a) <= bound && std::abs(a) > best) {
        best = std::abs(a);
        q = j;
      }
    }
    if (q < 0) {
      // Dual unbounded: the row cannot reach its bound. Confirm on fresh
      // factors before trusting it.
      if (etas_.empty()) return DualOutcome::kInfeasible;
      refresh();
      reduced_costs();
      continue;
    }

    load_column(q, alpha);
    ftran(alpha);
    if (std::abs(alpha[r]) < opt_.pivot_tol) {
      refresh();
      reduced_costs();
      ++res.iterations;
      continue;
    }
    // Dual update along the pivot row.
    const double theta_d = dj[q] / row_entry(q);
    for (int j = 0; j < n_ + m_; ++j) {
      if (state_[j] == VarState::kBasic) continue;
      const double a = row_entry(j);
      if (a != 0.0) dj[j] -= theta_d * a;
    }
    dj[q] = 0.0;
    dj[out] = -theta_d;
    // Primal update.
    const double t = (x_[out] - target) / alpha[r];
    x_[q] += t;
    for (int p = 0; p < m_; ++p) {
      if (alpha[p] != 0.0) x_[head_[p]] -= alpha[p] * t;
    }
    x_[out] = target;
    // Devex weights.
    const double br = beta[r];
    const double ar = alpha[r];
    for (int p = 0; p < m_; ++p) {
      if (p == r || alpha[p] == 0.0) continue;
      const double ratio = alpha[p] / ar;
      beta[p] = std::max(beta[p], ratio * ratio * br);
    }
    beta[r] = std::max(br / (ar * ar), 1.0);

    state_[out] = to_lower ? VarState::kAtLower : VarState::kAtUpper;
    head_[r] = q;
    state_[q] = VarState::kBasic;
    push_eta(r, alpha);
    if (static_cast<int>(etas_.size()) >= opt_.refactor_interval) {
      refresh();
      reduced_costs();
    }
    ++res.iterations;
    ++res.dual_iterations;
  }
  return DualOutcome::kGaveUp;
}

SimplexResult RevisedSimplex::run(const Basis* warm) {
  SimplexResult res;
  if (infeasible_bounds_) {
    res.status = LpStatus::kInfeasible;
    slack_basis();
    x_ = Eigen::VectorXd::Zero(n_ + m_);
    res.x = Eigen::VectorXd::Zero(n_);
    res.row_activity = Eigen::VectorXd::Zero(m_);
    res.duals = Eigen::VectorXd::Zero(m_);
    res.reduced_costs = lp_.cost;
    return res;
  }
  if (warm && !warm->empty()) {
    adopt(*warm);
  } else {
    slack_basis();
  }
  if (!factorize()) {
    if (opt_.log) *opt_.log << "simplex: warm basis singular, restarting from slack basis\n";
    slack_basis();
    factorize();
  }
  compute_primal();

  const auto start = std::chrono::steady_clock::now();
  if (warm && !warm->empty() && dual_phase(res, start) == DualOutcome::kInfeasible) {
    res.status = LpStatus::kInfeasible;
    finish(res);
    return res;
  }
  const double tol = opt_.primal_tol;
  const long degenerate_limit = static_cast<long>(opt_.bland_trigger_factor) * m_;
  long degenerate_run = 0;
  bool bland = false;
  bool confirmed = false;  // last pricing pass ran on a fresh factorization
  Eigen::VectorXd cb(m_), y(m_), d(n_), alpha(m_), rho(m_), prow(n_);
  const bool devex = opt_.pricing == Pricing::kDevex;
  weight_.assign(n_ + m_, 1.0);
  std::vector<double> ratio_exact(m_);
  std::vector<Bound> ratio_bound(m_);

  while (true) {
    if (res.iterations >= opt_.iteration_limit) {
      res.status = LpStatus::kIterationLimit;
      break;
    }
    if ((res.iterations & 63) == 0 &&
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() >
            opt_.time_limit_s) {
      res.status = LpStatus::kTimeLimit;
      break;
    }

    // Phase selection and basic costs.
    double infeasibility = 0.0;
    for (int p = 0; p < m_; ++p) {
      const int j = head_[p];
      if (x_[j] < lower_[j] - tol) {
        cb[p] = -1.0;
        infeasibility += lower_[j] - x_[j];
      } else if (x_[j] > upper_[j] + tol) {
        cb[p] = 1.0;
        infeasibility += x_[j] - upper_[j];
      } else {
        cb[p] = 0.0;
      }
    }
    const bool phase1 = infeasibility > 0.0;
    if (!phase1) {
      for (int p = 0; p < m_; ++p) cb[p] = cost_[head_[p]];
    }
    y = cb;
    btran(y);
    d.noalias() = lp_.A.transpose() * y;
    if (phase1) {
      d = -d;
    } else {
      d = lp_.cost - d;
    }

    if (opt_.on_iteration || (opt_.log && opt_.log_every > 0 && res.iterations % opt_.log_every == 0)) {
      IterationInfo info;
      info.iteration = res.iterations;
      info.phase = phase1 ? 1 : 2;
      info.objective = phase1 ? infeasibility : structural_objective();
      info.dual_bound = phase1 ? -kInf : lagrangian_bound(lp_, y);
      info.bland = bland;
      if (opt_.on_iteration) opt_.on_iteration(info);
      if (opt_.log && opt_.log_every > 0 && res.iterations % opt_.log_every == 0) {
        *opt_.log << "iter " << info.iteration << " phase " << info.phase << " obj "
                  << info.objective << (bland ? " bland" : "") << '\n';
      }
    }

    // Pricing.
    int q = -1;
    double best = 0.0;
    int dir = 0;
    for (int j = 0; j < n_ + m_; ++j) {
      if (state_[j] == VarState::kBasic) continue;
      if (lower_[j] == upper_[j]) continue;
      const double dj = j < n_ ? d[j] : y[j - n_];
      int move = 0;
      if (state_[j] == VarState::kAtLower && dj < -opt_.dual_tol) move = 1;
      else if (state_[j] == VarState::kAtUpper && dj > opt_.dual_tol) move = -1;
      else if (state_[j] == VarState::kAtZero && std::abs(dj) > opt_.dual_tol) move = dj < 0 ? 1 : -1;
      if (move == 0) continue;
      if (bland) {
        q = j;
        dir = move;
        break;
      }
      const double score = devex ? dj * dj / weight_[j] : std::abs(dj);
      if (score > best) {
        best = score;
        q = j;
        dir = move;
      }
    }

    if (q < 0) {
      if (!confirmed && !etas_.empty()) {
        // Re-check on fresh factors before declaring a terminal state.
        refresh();
        confirmed = true;
        continue;
      }
      res.status = phase1 ? LpStatus::kInfeasible : LpStatus::kOptimal;
      break;
    }
    confirmed = false;

    load_column(q, alpha);
    ftran(alpha);

    // Harris two-pass ratio test.
    double theta_max = kInf;
    for (int p = 0; p < m_; ++p) {
      ratio_exact[p] = kInf;
      const double a = alpha[p];
      if (std::abs(a) < opt_.pivot_tol) continue;
      const double rate = -dir * a;
      const int j = head_[p];
      const double xj = x_[j];
      double relaxed = kInf;
      if (phase1 && xj < lower_[j] - tol) {
        if (rate > 0) {
          ratio_exact[p] = (lower_[j] - xj) / rate;
          relaxed = (lower_[j] - xj + tol) / rate;
          ratio_bound[p] = Bound::kLower;
        }
      } else if (phase1 && xj > upper_[j] + tol) {
        if (rate < 0) {
          ratio_exact[p] = (xj - upper_[j]) / -rate;
          relaxed = (xj - upper_[j] + tol) / -rate;
          ratio_bound[p] = Bound::kUpper;
        }
      } else if (rate < 0 && std::isfinite(lower_[j])) {
        ratio_exact[p] = (xj - lower_[j]) / -rate;
        relaxed = (xj - lower_[j] + tol) / -rate;
        ratio_bound[p] = Bound::kLower;
      } else if (rate > 0 && std::isfinite(upper_[j])) {
        ratio_exact[p] = (upper_[j] - xj) / rate;
        relaxed = (upper_[j] - xj + tol) / rate;
        ratio_bound[p] = Bound::kUpper;
      }
      theta_max = std::min(theta_max, relaxed);
    }
    int leave = -1;
    if (bland) {
      double best_ratio = kInf;
      for (int p = 0; p < m_; ++p) {
        if (ratio_exact[p] == kInf) continue;
        const double r = std::max(0.0, ratio_exact[p]);
        if (leave < 0 || r < best_ratio - 1e-12 ||
            (r <= best_ratio + 1e-12 && head_[p] < head_[leave])) {
          if (r < best_ratio) best_ratio = r;
          leave = p;
        }
      }
    } else {
      double best_pivot = 0.0;
      for (int p = 0; p < m_; ++p) {
        if (ratio_exact[p] <= theta_max && std::abs(alpha[p]) > best_pivot) {
          best_pivot = std::abs(alpha[p]);
          leave = p;
        }
      }
    }
    const double flip = upper_[q] - lower_[q];
    double theta = leave >= 0 ? std::max(0.0, ratio_exact[leave]) : kInf;
    const bool bound_flip = std::isfinite(flip) && flip <= theta;
    if (bound_flip) theta = flip;

    if (!std::isfinite(theta)) {
      if (phase1) {
        // Should not happen: an improving phase-1 direction always meets a
        // breakpoint. Treat as numerical trouble and refresh the factors.
        refresh();
        ++res.iterations;
        continue;
      }
      res.status = LpStatus::kUnbounded;
      break;
    }

    // Update primal values.
    if (theta != 0.0) {
      x_[q] += dir * theta;
      for (int p = 0; p < m_; ++p) {
        if (alpha[p] != 0.0) x_[head_[p]] -= dir * alpha[p] * theta;
      }
    }
    if (bound_flip) {
      state_[q] = dir > 0 ? VarState::kAtUpper : VarState::kAtLower;
      x_[q] = nonbasic_value(q);
    } else {
      const int out = head_[leave];
      state_[out] = ratio_bound[leave] == Bound::kLower ? VarState::kAtLower : VarState::kAtUpper;
      if (lower_[out] == upper_[out]) state_[out] = VarState::kAtLower;
      x_[out] = nonbasic_value(out);
      head_[leave] = q;
      state_[q] = VarState::kBasic;
      if (devex) {
        // Reference weights from the pivot row.
        const double aq = alpha[leave];
        rho.setZero();
        rho[leave] = 1.0;
        btran(rho);
        prow.noalias() = lp_.A.transpose() * rho;
        const double wq = weight_[q];
        for (int j = 0; j < n_ + m_; ++j) {
          if (state_[j] == VarState::kBasic) continue;
          const double a = j < n_ ? prow[j] : -rho[j - n_];
          if (a == 0.0) continue;
          const double ratio = a / aq;
          weight_[j] = std::max(weight_[j], ratio * ratio * wq);
        }
        weight_[out] = std::max(wq / (aq * aq), 1.0);
      }
      push_eta(leave, alpha);
      if (static_cast<int>(etas_.size()) >= opt_.refactor_interval) refresh();
    }

    ++res.iterations;
    if (phase1) ++res.phase1_iterations;
    if (bland) ++res.bland_iterations;
    if (theta <= 1e-12) {
      if (++degenerate_run >= degenerate_limit) bland = true;
    } else {
      degenerate_run = 0;
      bland = false;
    }
  }

  if (!etas_.empty()) {
    refresh();
  }
  finish(res);
  return res;
}

}  // namespace

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
    case LpStatus::kIterationLimit: return "iteration-limit";
    case LpStatus::kTimeLimit: return "time-limit";
  }
  return "?";
}

SimplexResult solve_simplex(const LpModel& lp, const SimplexOptions& options, const Basis* warm) {
  if (lp.cost.size() != lp.cols() || lp.col_lower.size() != lp.cols() ||
      lp.col_upper.size() != lp.cols() || lp.row_lower.size() != lp.rows() ||
      lp.row_upper.size() != lp.rows()) {
    throw SolverError("LP model dimensions are inconsistent");
  }
  RevisedSimplex s(lp, options);
  return s.run(warm);
}

double lagrangian_bound(const LpModel& lp, const Eigen::VectorXd& y) {
  const Eigen::VectorXd d = lp.cost - lp.A.transpose() * y;
  double bound = 0.0;
  for (int j = 0; j < lp.cols(); ++j) {
    if (d[j] > 0) bound += d[j] * lp.col_lower[j];
    else if (d[j] < 0) bound += d[j] * lp.col_upper[j];
  }
  for (int i = 0; i < lp.rows(); ++i) {
    if (y[i] > 0) bound += y[i] * lp.row_lower[i];
    else if (y[i] < 0) bound += y[i] * lp.row_upper[i];
  }
  return std::isnan(bound) ? -kInf : bound;
}

CertificateCheck check_certificate(const LpModel& lp, const Eigen::VectorXd& x,
                                   const Eigen::VectorXd& y, double active_tol) {
  CertificateCheck c;
  const Eigen::VectorXd r = lp.A * x;
  const Eigen::VectorXd d = lp.cost - lp.A.transpose() * y;
  c.primal_objective = lp.cost.dot(x);
  c.dual_objective = 0.0;
  // Each quantity (row activity or column value) with multiplier mu sits at
  // lower bound lo / upper bound hi. mu > 0 needs the activity at lo, mu < 0
  // at hi.
  auto account = [&](double value, double mu, double lo, double hi, double& viol) {
    viol = std::max(viol, std::max(lo - value, value - hi));
    if (mu > 0) {
      if (!std::isfinite(lo)) {
        c.dual_infeasibility = std::max(c.dual_infeasibility, mu);
      } else {
        c.complementary_slackness = std::max(c.complementary_slackness, mu * std::abs(value - lo));
        c.dual_objective += mu * lo;
      }
    } else if (mu < 0) {
      if (!std::isfinite(hi)) {
        c.dual_infeasibility = std::max(c.dual_infeasibility, -mu);
      } else {
        c.complementary_slackness = std::max(c.complementary_slackness, -mu * std::abs(hi - value));
        c.dual_objective += mu * hi;
      }
    }
  };
  for (int i = 0; i < lp.rows(); ++i) {
    account(r[i], y[i], lp.row_lower[i], lp.row_upper[i], c.primal_residual);
  }
  for (int j = 0; j < lp.cols(); ++j) {
    account(x[j], d[j], lp.col_lower[j], lp.col_upper[j], c.bound_violation);
  }
  (void)active_tol;
  return c;
}

}  // namespace eamod
