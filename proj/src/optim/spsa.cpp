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

#include "qctrl/optim/spsa.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace qctrl::optim {

RealVector clip(const RealVector& x, const RealVector& lower, const RealVector& upper) {
  RealVector out = x;
  if (lower.size() == x.size()) out = out.cwiseMax(lower);
  if (upper.size() == x.size()) out = out.cwiseMin(upper);
  return out;
}

double SpsaConfig::gain_a(int k) const { return a / std::pow(k + 1 + A, alpha); }

double SpsaConfig::gain_c(int k) const { return c / std::pow(k + 1, gamma); }

double default_spsa_a(const RealVector& theta0) {
  const double mean = theta0.size() > 0 ? theta0.cwiseAbs().mean() : 0.0;
  return 0.2 * std::max(1.0, mean);
}

namespace {

double checked(const Objective& f, const RealVector& x) {
  const double v = f(x);
  if (!std::isfinite(v)) {
    std::ostringstream os;
    os << "objective returned " << v << " at theta = [" << x.transpose() << "]";
    throw std::domain_error(os.str());
  }
  return v;
}

}  // namespace

SpsaResult spsa_minimize(const Objective& objective, const RealVector& theta0, const SpsaConfig& cfg) {
  const Eigen::Index p = theta0.size();
  if (p == 0) throw std::invalid_argument("spsa_minimize: theta0 is empty");
  if (!theta0.allFinite()) throw std::invalid_argument("spsa_minimize: theta0 is not finite");
  if ((cfg.lower.size() != 0 && cfg.lower.size() != p) || (cfg.upper.size() != 0 && cfg.upper.size() != p)) {
    throw std::invalid_argument("spsa_minimize: bound size does not match theta0");
  }
  if (clip(theta0, cfg.lower, cfg.upper) != theta0) {
    throw std::invalid_argument("spsa_minimize: theta0 lies outside the clip bounds");
  }
  if (cfg.budget < 0 || !(cfg.a > 0) || !(cfg.c > 0)) {
    throw std::invalid_argument("spsa_minimize: budget must be >= 0 and gains positive");
  }

  SpsaResult r;
  if (cfg.budget == 0) {
    r.theta = theta0;
    r.value = checked(objective, theta0);
    r.trace.evaluations = 1;
    return r;
  }

  std::mt19937_64 rng(cfg.seed);
  RealVector theta = theta0;
  RealVector delta(p);
  r.value = std::numeric_limits<double>::infinity();
  for (int k = 0; k < cfg.budget; ++k) {
    if (cfg.record_iterates) r.iterates.push_back(theta);
    std::vector<int> signs(static_cast<std::size_t>(p));
    for (Eigen::Index i = 0; i < p; ++i) {
      signs[static_cast<std::size_t>(i)] = (rng() >> 63) ? 1 : -1;
      delta(i) = signs[static_cast<std::size_t>(i)];
    }
    if (cfg.record_iterates) r.perturbations.push_back(signs);
    const double ck = cfg.gain_c(k);
    const RealVector plus = clip(theta + ck * delta, cfg.lower, cfg.upper);
    const RealVector minus = clip(theta - ck * delta, cfg.lower, cfg.upper);
    const double y_plus = checked(objective, plus);
    const double y_minus = checked(objective, minus);
    r.trace.evaluations += 2;
    if (y_plus < r.value) {
      r.value = y_plus;
      r.theta = plus;
    }
    if (y_minus < r.value) {
      r.value = y_minus;
      r.theta = minus;
    }
    r.trace.record(std::min(y_plus, y_minus));
    const RealVector g = ((y_plus - y_minus) / (2.0 * ck)) * delta;
    theta = clip(theta - cfg.gain_a(k) * g, cfg.lower, cfg.upper);
  }
  return r;
}

}  // namespace qctrl::optim
