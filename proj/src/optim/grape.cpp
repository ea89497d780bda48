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

#include "qctrl/optim/grape.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qctrl::optim {

RealVector flatten(const RealMatrix& amplitudes) {
  RealVector out(amplitudes.size());
  Eigen::Index i = 0;
  for (Eigen::Index c = 0; c < amplitudes.rows(); ++c) {
    for (Eigen::Index k = 0; k < amplitudes.cols(); ++k) out(i++) = amplitudes(c, k);
  }
  return out;
}

RealMatrix unflatten(const RealVector& flat, int channels, int n_slices) {
  if (flat.size() != static_cast<Eigen::Index>(channels) * n_slices) {
    throw std::invalid_argument("unflatten: size mismatch");
  }
  RealMatrix out(channels, n_slices);
  Eigen::Index i = 0;
  for (int c = 0; c < channels; ++c) {
    for (int k = 0; k < n_slices; ++k) out(c, k) = flat(i++);
  }
  return out;
}

std::pair<RealVector, RealVector> amplitude_bounds(const tasks::TaskSpec& spec) {
  const int n = spec.grid.n_slices();
  RealVector lo(spec.n_channels() * n), hi(spec.n_channels() * n);
  for (int c = 0; c < spec.n_channels(); ++c) {
    const auto& ch = spec.channels[static_cast<std::size_t>(c)];
    const bool b = ch.bounded();
    lo.segment(c * n, n).setConstant(b ? ch.lower : -std::numeric_limits<double>::infinity());
    hi.segment(c * n, n).setConstant(b ? ch.upper : std::numeric_limits<double>::infinity());
  }
  return {lo, hi};
}

namespace {

double infidelity(const tasks::TaskSpec& spec, const RealVector& flat) {
  return 1.0 - tasks::evaluate_protocol(spec, unflatten(flat, spec.n_channels(), spec.grid.n_slices()));
}

}  // namespace

RealVector grape_gradient(const tasks::TaskSpec& spec, const RealVector& flat, double step, long long* evaluations) {
  const auto [lo, hi] = amplitude_bounds(spec);
  RealVector g(flat.size());
  RealVector x = flat;
  double f0 = std::numeric_limits<double>::quiet_NaN();
  Eigen::Index n_one_sided = 0;
  for (Eigen::Index i = 0; i < flat.size(); ++i) {
    const double xi = flat(i);
    const double up = std::min(step, hi(i) - xi);
    const double down = std::min(step, xi - lo(i));
    double f_plus, f_minus, width;
    if (up > 0 && down > 0) {
      x(i) = xi + up;
      f_plus = infidelity(spec, x);
      x(i) = xi - down;
      f_minus = infidelity(spec, x);
      width = up + down;
    } else {
      ++n_one_sided;
      if (std::isnan(f0)) f0 = infidelity(spec, flat);
      if (up > 0) {
        x(i) = xi + up;
        f_plus = infidelity(spec, x);
        f_minus = f0;
        width = up;
      } else {
        x(i) = xi - down;
        f_minus = infidelity(spec, x);
        f_plus = f0;
        width = down;
      }
    }
    x(i) = xi;
    g(i) = (f_plus - f_minus) / width;
  }
  if (evaluations) *evaluations += 2 * flat.size() - n_one_sided + (std::isnan(f0) ? 0 : 1);
  return g;
}

GrapeResult grape_optimize(const tasks::TaskSpec& spec, const tasks::Protocol& initial, const GrapeConfig& cfg) {
  if (initial.amplitudes.rows() != spec.n_channels() || initial.amplitudes.cols() != spec.grid.n_slices()) {
    throw std::invalid_argument("grape_optimize: initial protocol shape does not match the task");
  }
  const auto [lo, hi] = amplitude_bounds(spec);
  LbfgsConfig lc;
  lc.max_iterations = cfg.max_iterations;
  lc.memory = cfg.memory;
  lc.tolerance = cfg.tolerance;
  long long calls = 0;
  const auto f = [&](const RealVector& x) {
    ++calls;
    return infidelity(spec, x);
  };
  const auto g = [&](const RealVector& x) { return grape_gradient(spec, x, cfg.fd_step, &calls); };
  const LbfgsResult r = lbfgs_minimize(f, g, flatten(initial.amplitudes), lo, hi, lc);
  GrapeResult out;
  out.protocol = tasks::Protocol{unflatten(r.theta, spec.n_channels(), spec.grid.n_slices()),
                                 tasks::Provenance::kNumeric};
  out.fidelity = 1.0 - r.value;
  out.trace = r.trace;
  out.trace.evaluations = static_cast<int>(std::min<long long>(calls, std::numeric_limits<int>::max()));
  out.iterations = r.iterations;
  return out;
}

}  // namespace qctrl::optim
