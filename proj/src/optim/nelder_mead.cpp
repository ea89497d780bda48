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

#include "qctrl/optim/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace qctrl::optim {

OptimizeResult nelder_mead_minimize(const Objective& f, const RealVector& x0, const NelderMeadConfig& cfg) {
  const Eigen::Index n = x0.size();
  if (n == 0) throw std::invalid_argument("nelder_mead_minimize: x0 is empty");
  constexpr double rho = 1.0, chi = 2.0, psi = 0.5, sigma = 0.5;

  OptimizeResult r;
  auto eval = [&](const RealVector& x) {
    ++r.trace.evaluations;
    const double v = f(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  };
  auto budget_left = [&] { return cfg.max_evaluations <= 0 || r.trace.evaluations < cfg.max_evaluations; };

  std::vector<RealVector> sim(static_cast<std::size_t>(n + 1), x0);
  std::vector<double> fs(static_cast<std::size_t>(n + 1));
  for (Eigen::Index i = 0; i < n; ++i) {
    RealVector& y = sim[static_cast<std::size_t>(i + 1)];
    y(i) = y(i) != 0.0 ? 1.05 * y(i) : 0.00025;
  }
  for (std::size_t i = 0; i < sim.size(); ++i) fs[i] = eval(sim[i]);

  std::vector<std::size_t> order(sim.size());
  auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fs[a] < fs[b]; });
    std::vector<RealVector> s2;
    std::vector<double> f2;
    for (auto i : order) {
      s2.push_back(sim[i]);
      f2.push_back(fs[i]);
    }
    sim.swap(s2);
    fs.swap(f2);
  };
  sort_simplex();

  for (int it = 0; it < cfg.max_iterations && budget_left(); ++it) {
    double xspread = 0.0, fspread = 0.0;
    for (std::size_t i = 1; i < sim.size(); ++i) {
      xspread = std::max(xspread, (sim[i] - sim[0]).lpNorm<Eigen::Infinity>());
      fspread = std::max(fspread, std::abs(fs[i] - fs[0]));
    }
    if (xspread <= cfg.xatol && fspread <= cfg.fatol) break;

    RealVector centroid = RealVector::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i) centroid += sim[static_cast<std::size_t>(i)];
    centroid /= static_cast<double>(n);
    RealVector& worst = sim.back();
    double& f_worst = fs.back();

    const RealVector xr = (1 + rho) * centroid - rho * worst;
    const double fr = eval(xr);
    bool shrink = false;
    if (fr < fs[0]) {
      const RealVector xe = (1 + rho * chi) * centroid - rho * chi * worst;
      const double fe = eval(xe);
      if (fe < fr) {
        worst = xe;
        f_worst = fe;
      } else {
        worst = xr;
        f_worst = fr;
      }
    } else if (fr < fs[fs.size() - 2]) {
      worst = xr;
      f_worst = fr;
    } else if (fr < f_worst) {
      const RealVector xc = (1 + psi * rho) * centroid - psi * rho * worst;
      const double fc = eval(xc);
      if (fc <= fr) {
        worst = xc;
        f_worst = fc;
      } else {
        shrink = true;
      }
    } else {
      const RealVector xcc = (1 - psi) * centroid + psi * worst;
      const double fcc = eval(xcc);
      if (fcc < f_worst) {
        worst = xcc;
        f_worst = fcc;
      } else {
        shrink = true;
      }
    }
    if (shrink) {
      for (std::size_t j = 1; j < sim.size(); ++j) {
        sim[j] = sim[0] + sigma * (sim[j] - sim[0]);
        fs[j] = eval(sim[j]);
      }
    }
    sort_simplex();
    r.trace.record(fs[0]);
  }
  r.theta = sim[0];
  r.value = fs[0];
  return r;
}

}  // namespace qctrl::optim
