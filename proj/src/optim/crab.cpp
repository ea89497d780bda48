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

#include "qctrl/optim/crab.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "qctrl/tasks/fixtures.hpp"

namespace qctrl::optim {

RealMatrix crab_frequencies(int channels, int m, double total_time, std::uint64_t seed) {
  if (channels < 1 || m < 1 || !(total_time > 0)) throw std::invalid_argument("crab_frequencies: bad shape");
  std::mt19937_64 rng(seed);
  RealMatrix w(channels, m);
  for (int c = 0; c < channels; ++c) {
    for (int k = 0; k < m; ++k) {
      const double r = tasks::unit_uniform(rng) - 0.5;
      w(c, k) = std::numbers::pi * (k + 1) / total_time * (1.0 + r);
    }
  }
  return w;
}

RealMatrix crab_modulate(const RealMatrix& u0, const RealMatrix& A, const RealMatrix& B,
                         const RealMatrix& frequencies, const TimeGrid& grid) {
  if (u0.cols() != grid.n_slices() || A.rows() != u0.rows() || B.rows() != u0.rows() ||
      frequencies.rows() != u0.rows() || A.cols() != frequencies.cols() || B.cols() != frequencies.cols()) {
    throw std::invalid_argument("crab_modulate: shape mismatch");
  }
  RealMatrix out = u0;
  for (Eigen::Index c = 0; c < u0.rows(); ++c) {
    if ((A.row(c).array() == 0.0).all() && (B.row(c).array() == 0.0).all()) continue;
    for (Eigen::Index k = 0; k < u0.cols(); ++k) {
      const double t = grid.midpoint(static_cast<int>(k));
      double f = 0.0;
      for (Eigen::Index j = 0; j < frequencies.cols(); ++j) {
        const double wt = frequencies(c, j) * t;
        f += A(c, j) * std::sin(wt) + B(c, j) * std::cos(wt);
      }
      out(c, k) = u0(c, k) * (1.0 + f);
    }
  }
  return out;
}

RealMatrix crab_modulate_flat(const RealMatrix& u0, const RealVector& coefficients,
                              const RealMatrix& frequencies, const TimeGrid& grid) {
  const Eigen::Index channels = frequencies.rows(), m = frequencies.cols();
  if (coefficients.size() != 2 * m * channels) throw std::invalid_argument("crab_modulate_flat: size mismatch");
  RealMatrix A(channels, m), B(channels, m);
  for (Eigen::Index c = 0; c < channels; ++c) {
    A.row(c) = coefficients.segment(2 * m * c, m).transpose();
    B.row(c) = coefficients.segment(2 * m * c + m, m).transpose();
  }
  return crab_modulate(u0, A, B, frequencies, grid);
}

RealMatrix random_amplitudes(const tasks::TaskSpec& spec, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const double s = std::numbers::pi / (spec.grid.total_time() * spec.time_scale);
  RealMatrix u(spec.n_channels(), spec.grid.n_slices());
  for (int c = 0; c < spec.n_channels(); ++c) {
    const auto& ch = spec.channels[static_cast<std::size_t>(c)];
    const double lo = ch.bounded() ? ch.lower : -s;
    const double hi = ch.bounded() ? ch.upper : s;
    for (int k = 0; k < spec.grid.n_slices(); ++k) u(c, k) = lo + (hi - lo) * tasks::unit_uniform(rng);
  }
  return u;
}

namespace {

RealMatrix initial_guess(const tasks::TaskSpec& spec, InitialGuess kind, std::uint64_t seed,
                         const GrapeConfig& grape) {
  const RealMatrix random = random_amplitudes(spec, seed);
  if (kind == InitialGuess::kRandom) return random;
  return grape_optimize(spec, tasks::Protocol{random, tasks::Provenance::kNumeric}, grape).protocol.amplitudes;
}

}  // namespace

BaselineResult crab_spsa_baseline(const tasks::TaskSpec& spec, const CrabSpsaConfig& cfg) {
  if (cfg.harmonics < 1 || cfg.budget < 0) throw std::invalid_argument("crab_spsa_baseline: bad config");
  const RealMatrix u0 = initial_guess(spec, cfg.initial, cfg.seed, cfg.grape);
  auto [noisy, noise] = tasks::apply_noise(spec, cfg.sigma, cfg.noise_seed);
  const RealMatrix w = crab_frequencies(spec.n_channels(), cfg.harmonics, spec.grid.total_time(), cfg.seed);

  BaselineResult out;
  out.noise = noise;
  out.initial_fidelity = tasks::evaluate_protocol(noisy, u0);
  const auto objective = [&](const RealVector& theta) {
    return 1.0 - tasks::evaluate_protocol(noisy, crab_modulate_flat(u0, theta, w, spec.grid));
  };
  SpsaConfig sc;
  sc.a = cfg.a;
  sc.c = cfg.c;
  sc.budget = cfg.budget;
  sc.seed = cfg.seed;
  const Eigen::Index p = 2 * cfg.harmonics * spec.n_channels();
  sc.lower = RealVector::Constant(p, -cfg.coefficient_bound);
  sc.upper = RealVector::Constant(p, cfg.coefficient_bound);
  const RealVector theta0 = RealVector::Zero(p);

  out.best = tasks::Protocol{u0, tasks::Provenance::kBaseline};
  out.fidelity = out.initial_fidelity;
  out.evaluations = 1;
  if (cfg.budget > 0) {
    const SpsaResult r = spsa_minimize(objective, theta0, sc);
    out.evaluations += r.trace.evaluations;
    for (double best : r.trace.best_so_far) out.fidelity_trace.push_back(std::max(out.initial_fidelity, 1.0 - best));
    if (1.0 - r.value > out.fidelity) {
      out.fidelity = 1.0 - r.value;
      out.best.amplitudes = crab_modulate_flat(u0, r.theta, w, spec.grid);
    }
  }
  return out;
}

BaselineResult crab_nelder_mead(const tasks::TaskSpec& spec, const CrabNmConfig& cfg) {
  const RealMatrix u0 = random_amplitudes(spec, cfg.seed);
  const RealMatrix w = crab_frequencies(spec.n_channels(), cfg.harmonics, spec.grid.total_time(), cfg.seed);
  const auto objective = [&](const RealVector& theta) {
    return 1.0 - tasks::evaluate_protocol(spec, crab_modulate_flat(u0, theta, w, spec.grid));
  };
  BaselineResult out;
  out.initial_fidelity = tasks::evaluate_protocol(spec, u0);
  NelderMeadConfig nc;
  nc.max_iterations = cfg.max_iterations;
  nc.xatol = 1e-8;
  nc.fatol = 1e-12;
  const OptimizeResult r = nelder_mead_minimize(objective, RealVector::Zero(2 * cfg.harmonics * spec.n_channels()), nc);
  out.evaluations = r.trace.evaluations + 1;
  for (double best : r.trace.best_so_far) out.fidelity_trace.push_back(1.0 - best);
  out.fidelity = 1.0 - r.value;
  out.best = tasks::Protocol{crab_modulate_flat(u0, r.theta, w, spec.grid), tasks::Provenance::kBaseline};
  return out;
}

}  // namespace qctrl::optim
