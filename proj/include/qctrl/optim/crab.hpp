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

#pragma once

#include <cstdint>
#include <vector>

#include "qctrl/optim/grape.hpp"
#include "qctrl/optim/nelder_mead.hpp"
#include "qctrl/optim/spsa.hpp"
#include "qctrl/tasks/task.hpp"

namespace qctrl::optim {

/// omega_{c,k} = (pi k / T)(1 + r_{c,k}) for k = 1..m, r uniform in
/// [-0.5, 0.5), drawn channel by channel from mt19937_64(seed).
RealMatrix crab_frequencies(int channels, int m, double total_time, std::uint64_t seed);

/// u_c(t_k) = u0_c(t_k) (1 + sum_j [A_cj sin(w_cj t_k) + B_cj cos(w_cj t_k)]).
/// A, B and frequencies are channels x m. Zero coefficients return u0
/// bit-exactly.
RealMatrix crab_modulate(const RealMatrix& u0, const RealMatrix& A, const RealMatrix& B,
                         const RealMatrix& frequencies, const TimeGrid& grid);

/// Flat coefficient layout used by the CRAB optimizers: for each channel,
/// A_c1..A_cm then B_c1..B_cm.
RealMatrix crab_modulate_flat(const RealMatrix& u0, const RealVector& coefficients,
                              const RealMatrix& frequencies, const TimeGrid& grid);

enum class InitialGuess { kRandom, kGrapeWarmStart };

/// Random amplitudes: uniform in [lower, upper] for bounded channels and
/// uniform in [-s, s] with s = pi / (T * time_scale) otherwise.
RealMatrix random_amplitudes(const tasks::TaskSpec& spec, std::uint64_t seed);

struct CrabSpsaConfig {
  double sigma = 0.0;
  std::uint64_t noise_seed = 0;
  InitialGuess initial = InitialGuess::kRandom;
  int harmonics = 20;
  int budget = 50000;  // SPSA steps
  double a = 0.2;
  double c = 0.1;
  double coefficient_bound = 1.0;  // |A|, |B| clip box
  std::uint64_t seed = 0;          // frequencies, random guess and SPSA draws
  GrapeConfig grape;               // used for the warm start
};

struct BaselineResult {
  tasks::Protocol best;
  double fidelity = 0.0;          // best noisy fidelity
  double initial_fidelity = 0.0;  // noisy fidelity of u0
  std::vector<double> fidelity_trace;  // best-so-far noisy fidelity per step
  int evaluations = 0;
  tasks::NoiseAssignment noise;
};

/// CRAB modulation of u0 with SPSA over the coefficients, evaluated on the
/// perturbed task. `spec` is the nominal task; noise is applied inside.
BaselineResult crab_spsa_baseline(const tasks::TaskSpec& spec, const CrabSpsaConfig& config);

struct CrabNmConfig {
  int harmonics = 20;
  int max_iterations = 4000;
  std::uint64_t seed = 0;
};

/// Noiseless CRAB with Nelder-Mead over the coefficients, starting from a
/// random guess.
BaselineResult crab_nelder_mead(const tasks::TaskSpec& spec, const CrabNmConfig& config);

}  // namespace qctrl::optim
