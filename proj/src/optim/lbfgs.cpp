// Copyright 2026 The qctrl-bench Authors
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

#include "qctrl/optim/lbfgs.hpp"

#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>

namespace qctrl::optim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Box {
  RealVector lo, hi;

  bool at_lower(const RealVector& x, Eigen::Index i) const { return x(i) <= lo(i); }
  bool at_upper(const RealVector& x, Eigen::Index i) const { return x(i) >= hi(i); }
};

/// Gradient with components that point out of an active bound zeroed.
RealVector projected_gradient(const RealVector& x, const RealVector& g, const Box& box) {
  RealVector pg = g;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if ((box.at_lower(x, i) && g(i) > 0) || (box.at_upper(x, i) && g(i) < 0)) pg(i) = 0.0;
  }
  return pg;
}

}  // namespace

LbfgsResult lbfgs_minimize(const Objective& f, const Gradient& grad, const RealVector& x0,
                           const RealVector& lower, const RealVector& upper, const LbfgsConfig& cfg) {
  const Eigen::Index n = x0.size();
  if (n == 0) throw std::invalid_argument("lbfgs_minimize: x0 is empty");
  Box box{lower.size() == n ? lower : RealVector::Constant(n, -kInf),
          upper.size() == n ? upper : RealVector::Constant(n, kInf)};

  LbfgsResult r;
  RealVector x = clip(x0, box.lo, box.hi);
  double fx = f(x);
  ++r.trace.evaluations;
  r.trace.record(fx);
  RealVector g = grad(x);
  std::deque<std::pair<RealVector, RealVector>> history;  // (s, y)

  for (int it = 0; it < cfg.max_iterations; ++it) {
    if (fx <= cfg.tolerance) {
      r.converged = true;
      break;
    }
    const RealVector pg = projected_gradient(x, g, box);
    if (pg.lpNorm<Eigen::Infinity>() <= cfg.projected_gradient_tol) {
      r.converged = true;
      break;
    }
    // Two-loop recursion on the free subspace.
    std::vector<bool> free(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) free[static_cast<std::size_t>(i)] = pg(i) != 0.0;
    auto mask = [&](RealVector v) {
      for (Eigen::Index i = 0; i < n; ++i) {
        if (!free[static_cast<std::size_t>(i)]) v(i) = 0.0;
      }
      return v;
    };
    RealVector q = pg;
    std::vector<double> alphas(history.size());
    for (std::size_t j = history.size(); j-- > 0;) {
      const RealVector s = mask(history[j].first), y = mask(history[j].second);
      const double sy = s.dot(y);
      if (sy <= 1e-300) {
        alphas[j] = 0.0;
        continue;
      }
      alphas[j] = s.dot(q) / sy;
      q -= alphas[j] * y;
    }
    if (!history.empty()) {
      const RealVector s = mask(history.back().first), y = mask(history.back().second);
      const double yy = y.dot(y);
      if (yy > 0 && s.dot(y) > 0) q *= s.dot(y) / yy;
    }
    for (std::size_t j = 0; j < history.size(); ++j) {
      const RealVector s = mask(history[j].first), y = mask(history[j].second);
      const double sy = s.dot(y);
      if (sy <= 1e-300) continue;
      const double beta = y.dot(q) / sy;
      q += (alphas[j] - beta) * s;
    }
    RealVector d = -mask(q);
    if (!(d.dot(pg) < 0) || !d.allFinite()) {
      d = -pg;
      history.clear();
    }
    if (history.empty()) {
      // First step of a (re)start: cap the move so a huge gradient cannot
      // leave the region where the model is meaningful.
      const double norm = d.norm();
      if (norm > 1.0) d /= norm;
    }

    double step = 1.0;
    RealVector x_new;
    double f_new = kInf;
    bool accepted = false;
    for (int b = 0; b < cfg.max_backtracks; ++b) {
      x_new = clip(x + step * d, box.lo, box.hi);
      f_new = f(x_new);
      ++r.trace.evaluations;
      if (std::isfinite(f_new) && f_new <= fx + 1e-4 * pg.dot(x_new - x)) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      if (!history.empty()) {
        history.clear();
        continue;
      }
      r.converged = true;
      break;
    }
    const RealVector g_new = grad(x_new);
    const RealVector s = x_new - x, y = g_new - g;
    if (s.dot(y) > 1e-12 * s.norm() * y.norm()) {
      history.emplace_back(s, y);
      if (static_cast<int>(history.size()) > cfg.memory) history.pop_front();
    }
    const double decrease = fx - f_new;
    x = x_new;
    g = g_new;
    fx = f_new;
    r.trace.record(fx);
    r.iterations = it + 1;
    if (decrease <= cfg.relative_decrease_tol * std::max(1.0, std::abs(fx))) {
      r.converged = true;
      break;
    }
  }
  r.theta = x;
  r.value = fx;
  return r;
}

}  // namespace qctrl::optim
