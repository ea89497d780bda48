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

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "operators.hpp"
#include "qctrl/evolution.hpp"
#include "qctrl/fidelity.hpp"
#include "qctrl/tasks/fixtures.hpp"
#include "qctrl/tasks/task.hpp"

namespace qctrl::tasks {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

const char* const kRoman[] = {"I",  "II",  "III", "IV",  "V",   "VI",  "VII", "VIII",
                              "IX", "X",   "XI",  "XII", "XIII", "XIV", "XV", "XVI"};

Channel free_channel(std::string name) { return Channel{std::move(name), -kInf, kInf, BoundPolicy::kNone}; }

Channel clipped(std::string name, double lo, double hi) {
  return Channel{std::move(name), lo, hi, BoundPolicy::kClip};
}

Parameter fixed(std::string name, double v, bool noisy, std::string unit = "") {
  return Parameter{std::move(name), v, v, noisy, true, std::move(unit), {}};
}

Parameter configurable(std::string name, double v, bool noisy, std::string unit = "") {
  return Parameter{std::move(name), v, v, noisy, false, std::move(unit), {}};
}

Vector basis_state(int dim, int index) {
  Vector v = Vector::Zero(dim);
  v(index) = 1.0;
  return v;
}

Matrix two_qubit(const Matrix& a, const Matrix& b) { return kron(a, b); }

Matrix on_qubit(const Matrix& op, int site, int n) { return embed(op, site, n); }

Matrix pair_op(const Matrix& op, int i, int j, int n) {
  return embed(op, i, n) * embed(op, j, n);
}

/// Collective spin matrices for spin j = n/2 in the basis m = j, j-1, ..., -j.
void spin_matrices(int n, Matrix& jx, Matrix& jy, Matrix& jz) {
  const int dim = n + 1;
  const double j = n / 2.0;
  Matrix jp = Matrix::Zero(dim, dim);
  jz = Matrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const double m = j - i;
    jz(i, i) = m;
    if (i > 0) jp(i - 1, i) = std::sqrt(j * (j + 1) - m * (m + 1));
  }
  jx = 0.5 * (jp + jp.adjoint());
  jy = (jp - jp.adjoint()) / (2.0 * kImag);
}

Matrix qft(int dim) {
  Matrix f(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      f(r, c) = std::polar(1.0 / std::sqrt(static_cast<double>(dim)), 2.0 * kPi * r * c / dim);
    }
  }
  return f;
}

/// Lowest two eigenvectors of a real symmetric matrix with a fixed sign:
/// the first component larger than 1e-6 of the column maximum is positive.
Matrix lowest_two(const RealMatrix& h) {
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(h);
  RealMatrix v = es.eigenvectors().leftCols(2);
  for (int c = 0; c < 2; ++c) {
    const double scale = v.col(c).cwiseAbs().maxCoeff();
    for (Eigen::Index r = 0; r < v.rows(); ++r) {
      if (std::abs(v(r, c)) > 1e-6 * scale) {
        if (v(r, c) < 0) v.col(c) *= -1.0;
        break;
      }
    }
  }
  return v.cast<complex>();
}

double smoothstep(double tau) { return tau * tau * tau * (10.0 - 15.0 * tau + 6.0 * tau * tau); }

Vector ground_state(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  return es.eigenvectors().col(0);
}

Vector lz_state(double delta, double nu) {
  const double theta = std::atan2(delta, nu);
  Vector v(2);
  v << std::cos(theta / 2.0), std::sin(theta / 2.0);
  return v;
}

}  // namespace

std::string roman(int id) {
  if (id < 1 || id > kTaskCount) throw std::out_of_range("task id out of range");
  return kRoman[id - 1];
}

std::optional<int> parse_task_id(std::string_view text) {
  std::string upper;
  for (char c : text) upper += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (int i = 0; i < kTaskCount; ++i) {
    if (upper == kRoman[i]) return i + 1;
  }
  if (!upper.empty() && upper.size() <= 2 &&
      std::all_of(upper.begin(), upper.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    const int v = std::stoi(upper);
    if (v >= 1 && v <= kTaskCount) return v;
  }
  return std::nullopt;
}

std::string_view to_string(BoundPolicy p) {
  switch (p) {
    case BoundPolicy::kNone: return "none";
    case BoundPolicy::kClip: return "clip";
    case BoundPolicy::kPenalty: return "penalty";
  }
  return "?";
}

std::string_view to_string(EvolutionKind k) {
  switch (k) {
    case EvolutionKind::kUnitary: return "unitary";
    case EvolutionKind::kLindblad: return "lindblad";
    case EvolutionKind::kEffective: return "effective";
    case EvolutionKind::kSymplectic: return "symplectic";
    case EvolutionKind::kConjugation: return "operator-conjugation";
  }
  return "?";
}

std::string_view to_string(FidelityKind k) {
  switch (k) {
    case FidelityKind::kState: return "state";
    case FidelityKind::kGate: return "gate";
    case FidelityKind::kSuperop: return "superop";
    case FidelityKind::kTransfer: return "transfer";
  }
  return "?";
}

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::kAnsatz: return "ansatz-rendered";
    case Provenance::kNumeric: return "numeric-direct";
    case Provenance::kBaseline: return "baseline";
    case Provenance::kReference: return "reference";
  }
  return "?";
}

const Parameter& TaskSpec::param(std::string_view name) const {
  for (const auto& p : params) {
    if (p.name == name) return p;
  }
  throw std::invalid_argument("task " + roman(id) + " has no parameter '" + std::string(name) + "'");
}

std::vector<std::string> TaskSpec::noise_sensitive_params() const {
  std::vector<std::string> out;
  for (const auto& p : params) {
    if (p.noise_sensitive) out.push_back(p.name);
  }
  return out;
}

std::size_t TaskSpec::noise_sign_count() const {
  std::size_t n = 0;
  std::vector<std::string> seen;
  for (const auto& p : params) {
    if (!p.noise_sensitive) continue;
    if (!p.noise_group.empty()) {
      if (std::find(seen.begin(), seen.end(), p.noise_group) != seen.end()) continue;
      seen.push_back(p.noise_group);
    }
    ++n;
  }
  return n;
}

int TaskSpec::channel_index(std::string_view name) const {
  for (std::size_t i = 0; i < channels.size(); ++i) {
    if (channels[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

Protocol zero_protocol(const TaskSpec& spec) {
  return Protocol{RealMatrix::Zero(spec.n_channels(), spec.grid.n_slices()), Provenance::kBaseline};
}

namespace {

struct Defaults {
  int n_slices;
  double total_time;
  bool grid_fixed;
};

Defaults grid_defaults(int id) {
  switch (id) {
    case 1: return {40, 1.2, true};
    case 2: return {50, 5.0, false};
    case 3: return {20, kPi / 2.0, true};
    case 4: return {50, 2.0 * kPi, false};
    case 5: return {25, 18.0, true};
    case 6: return {25, 2.0 * kPi, true};
    case 7: return {10, 2.0, true};
    case 8: return {50, 2.0 * kPi, false};
    case 9: return {50, 10.0, false};
    case 10: return {50, 2.0 * kPi, false};
    case 11: return {50, 2.0 * kPi, false};
    case 12: return {50, 2.0 * kPi, false};
    case 13: return {50, 10.0, true};
    case 14: return {50, 60.0, true};
    case 15: return {60, 15.0, true};
    case 16: return {100, 1.0, true};
    default: throw std::invalid_argument("unknown task id " + std::to_string(id));
  }
}

void populate(TaskSpec& s) {
  auto ops = std::make_shared<TaskOperators>();
  const Matrix sx = pauli::x(), sy = pauli::y(), sz = pauli::z(), id2 = pauli::identity();
  switch (s.id) {
    case 1: {
      s.title = "Qubit ground-state transfer with a counter-diabatic field";
      s.hilbert_dim = 2;
      s.channels = {free_channel("g")};
      s.params = {fixed("Delta0", 1.0, true), fixed("h0", 2.0, true), fixed("hf", -2.0, true)};
      ops->op = {sx, sy, sz};
      break;
    }
    case 2: {
      s.title = "Dicke state preparation in the symmetric subspace";
      s.params = {configurable("Nq", 4, false), configurable("k", 2, false),
                  configurable("omega", 1.0, true), configurable("beta", 1.0, true)};
      s.channels = {clipped("x1", -kPi, kPi), clipped("x2", -kPi, kPi)};
      break;
    }
    case 3: {
      s.title = "Avoided-crossing state transfer";
      s.hilbert_dim = 2;
      s.params = {fixed("Delta", 1.2, true), fixed("nu_limit", 3.0, false), fixed("nu0", 3.0, false)};
      s.channels = {Channel{"nu", -3.0, 3.0, BoundPolicy::kPenalty}};
      ops->op = {sx, sz};
      break;
    }
    case 4: {
      s.title = "Phase-modulated qubit rotation";
      s.hilbert_dim = 2;
      s.params = {configurable("Omega", 2.0, true)};
      s.channels = {clipped("alpha", -kPi, kPi)};
      ops->op = {sx, sy};
      break;
    }
    case 5: {
      s.title = "Two-qubit state transfer through a tunable Ising coupling";
      s.hilbert_dim = 4;
      const auto d = draw_drift_coefficients(s.fixture_seed);
      s.params = {fixed("alpha1", d[0], true), fixed("beta1", d[1], true),
                  fixed("alpha2", d[2], true), fixed("beta2", d[3], true)};
      s.channels = {free_channel("u")};
      ops->op = {on_qubit(sx, 0, 2), on_qubit(sz, 0, 2), on_qubit(sx, 1, 2), on_qubit(sz, 1, 2),
                 two_qubit(sz, sz)};
      break;
    }
    case 6: {
      s.title = "Controlled-phase gate synthesis";
      s.hilbert_dim = 4;
      s.params = {fixed("kappa", 1.0, true), fixed("phi", kPi, false)};
      s.channels = {free_channel("u1x"), free_channel("u1y"), free_channel("u1z"),
                    free_channel("u2x"), free_channel("u2y"), free_channel("u2z"),
                    free_channel("udb")};
      const Matrix xx = two_qubit(sx, sx);
      ops->op = {xx,
                 on_qubit(sx, 0, 2), on_qubit(sy, 0, 2), on_qubit(sz, 0, 2),
                 on_qubit(sx, 1, 2), on_qubit(sy, 1, 2), on_qubit(sz, 1, 2),
                 xx + two_qubit(sy, sy) + two_qubit(sz, sz)};
      break;
    }
    case 7: {
      s.title = "Damped-qubit Hadamard gate";
      s.hilbert_dim = 2;
      s.params = {fixed("omega_q", 1.1, true), fixed("Delta", 0.15, true), fixed("gamma", 0.15, false)};
      s.channels = {free_channel("uz"), free_channel("ux")};
      ops->op = {sz, sx};
      break;
    }
    case 8: {
      s.title = "Two-qubit Fourier gate synthesis";
      s.hilbert_dim = 4;
      s.params = {fixed("J", 0.618, true), configurable("fourier_harmonics", 5, false)};
      s.channels = {free_channel("ux1"), free_channel("uy1"), free_channel("ux2"),
                    free_channel("uy2")};
      ops->op = {two_qubit(sx, sx) + two_qubit(sy, sy) + two_qubit(sz, sz),
                 on_qubit(sx, 0, 2), on_qubit(sy, 0, 2), on_qubit(sx, 1, 2), on_qubit(sy, 1, 2)};
      break;
    }
    case 9: {
      s.title = "Dissipative Lambda-system population transfer";
      s.hilbert_dim = 3;
      s.params = {fixed("gamma", 0.4, true), configurable("Delta_P", 0.0, false),
                  configurable("Delta_S", 0.0, false)};
      s.channels = {clipped("Omega_P", 0.0, 10.0), clipped("Omega_S", 0.0, 10.0)};
      break;
    }
    case 10: {
      s.title = "Driftless single-qubit gate";
      s.hilbert_dim = 2;
      const auto e = draw_euler_angles(s.fixture_seed);
      s.params = {fixed("phi", e[0], false), fixed("theta", e[1], false)};
      s.channels = {free_channel("ux"), free_channel("uy"), free_channel("uz")};
      ops->op = {sx, sy, sz};
      break;
    }
    case 11: {
      s.title = "Coupled-oscillator symplectic transform";
      s.hilbert_dim = 4;
      s.params = {fixed("omega1", 1.414, true), fixed("omega2", 1.414, true), fixed("g1", 0.5, true)};
      s.channels = {free_channel("u")};
      ops->form = symplectic_form(2);
      ops->control_real = RealMatrix::Zero(4, 4);
      ops->control_real(0, 0) = 1.0;
      ops->control_real(1, 1) = 1.0;
      break;
    }
    case 12: {
      s.title = "Toffoli gate synthesis on a three-qubit chain";
      s.hilbert_dim = 8;
      s.params = {fixed("w1", 2.0 * kPi, true), fixed("w2", 2.0 * kPi, true),
                  fixed("w3", 2.0 * kPi, true)};
      const Matrix* paulis[] = {&sx, &sy, &sz};
      const char axes[] = {'x', 'y', 'z'};
      for (int j = 0; j < 3; ++j) ops->op.push_back(on_qubit(sz, j, 3));
      for (int j = 0; j < 3; ++j) {
        for (int a = 0; a < 3; ++a) {
          s.channels.push_back(free_channel(std::string(1, axes[a]) + std::to_string(j + 1)));
          ops->op.push_back(on_qubit(*paulis[a], j, 3));
        }
      }
      const int pairs[3][2] = {{0, 1}, {1, 2}, {0, 2}};
      for (const auto& p : pairs) {
        for (int a = 0; a < 3; ++a) {
          s.channels.push_back(free_channel(std::string(2, axes[a]) + std::to_string(p[0] + 1) +
                                            std::to_string(p[1] + 1)));
          ops->op.push_back(pair_op(*paulis[a], p[0], p[1], 3));
        }
      }
      break;
    }
    case 13: {
      s.title = "Transmon logical X gate";
      s.params = {fixed("N_c", 8, false), fixed("E_C", 0.386, true, "GHz"),
                  fixed("E_J", 15.44, true, "GHz"), fixed("n_g", 0.0, false)};
      s.channels = {free_channel("V")};
      s.time_scale = 2.0 * kPi;
      s.time_unit = "ns";
      s.amplitude_unit = "GHz";
      break;
    }
    case 14: {
      s.title = "Leakage-aware transmon excitation";
      s.hilbert_dim = 3;
      s.params = {fixed("alpha", 0.3, true, "GHz"), fixed("lambda", std::sqrt(2.0), false)};
      s.channels = {free_channel("Omega_x"), free_channel("Omega_y"), free_channel("delta")};
      s.time_scale = 2.0 * kPi;
      s.time_unit = "ns";
      s.amplitude_unit = "GHz";
      break;
    }
    case 15: {
      s.title = "NMR heteronuclear coherence transfer";
      s.hilbert_dim = 4;
      s.params = {fixed("J", 100.0, true, "Hz")};
      s.channels = {free_channel("u1x"), free_channel("u1y"), free_channel("u2x"),
                    free_channel("u2y")};
      s.time_scale = 1e-3;
      s.time_unit = "ms";
      s.amplitude_unit = "rad/s";
      const Matrix s1x = two_qubit(0.5 * sx, id2), s1y = two_qubit(0.5 * sy, id2);
      const Matrix s1z = two_qubit(0.5 * sz, id2);
      const Matrix s2x = two_qubit(id2, 0.5 * sx), s2y = two_qubit(id2, 0.5 * sy);
      const Matrix s2z = two_qubit(id2, 0.5 * sz);
      ops->op = {s1z * s2z, s1x, s1y, s2x, s2y};
      break;
    }
    case 16: {
      s.title = "Refocusing a qubit under polynomial dephasing";
      s.hilbert_dim = 2;
      s.params = {fixed("beta0", 0.5, true), fixed("beta1", 2.0, true), fixed("beta2", 20.0, true)};
      for (auto& p : s.params) p.noise_group = "beta";
      s.channels = {free_channel("Omega")};
      ops->op = {sz, sx};
      break;
    }
    default:
      throw std::invalid_argument("unknown task id " + std::to_string(s.id));
  }
  s.ops = ops;
}

/// Second stage: everything that depends on (possibly overridden) parameter
/// values and the grid. Targets use nominal values.
void finalize(TaskSpec& s) {
  auto ops = std::const_pointer_cast<TaskOperators>(s.ops);
  const Matrix sx = pauli::x(), sy = pauli::y(), sz = pauli::z(), id2 = pauli::identity();
  switch (s.id) {
    case 1: {
      const double d0 = s.nominal("Delta0"), h0 = s.nominal("h0"), hf = s.nominal("hf");
      s.initial_state = ground_state(d0 * sx + h0 * sz);
      s.target_state = ground_state(2.0 * d0 * sx + hf * sz);
      s.fidelity = FidelityKind::kState;
      break;
    }
    case 2: {
      const double nq_raw = s.nominal("Nq"), k_raw = s.nominal("k");
      if (nq_raw != std::round(nq_raw) || nq_raw < 1 || nq_raw + 1 > kMaxDimension) {
        throw std::invalid_argument("Task II: Nq must be an integer in [1, 63]");
      }
      const int nq = static_cast<int>(nq_raw);
      if (k_raw != std::round(k_raw) || k_raw < 0 || k_raw > nq) {
        throw std::invalid_argument("Task II: k must be an integer in [0, Nq]");
      }
      const int k = static_cast<int>(k_raw);
      s.hilbert_dim = nq + 1;
      Matrix jx, jy, jz;
      spin_matrices(nq, jx, jy, jz);
      ops->op = {jx, jy, jz * jz};
      s.initial_state = basis_state(nq + 1, nq);
      s.target_state = basis_state(nq + 1, nq - k);
      s.fidelity = FidelityKind::kState;
      break;
    }
    case 3: {
      const double delta = s.nominal("Delta"), nu0 = s.nominal("nu0");
      s.initial_state = lz_state(delta, -nu0);
      s.target_state = lz_state(delta, nu0);
      s.fidelity = FidelityKind::kState;
      break;
    }
    case 4:
      s.target_unitary = matrix_exponential(sz, complex{0.0, -kPi / 2.0});
      s.fidelity = FidelityKind::kGate;
      break;
    case 5:
      s.initial_state = basis_state(4, 0);
      s.target_state = basis_state(4, 3);
      s.fidelity = FidelityKind::kState;
      break;
    case 6: {
      s.target_unitary = Matrix::Identity(4, 4);
      s.target_unitary(3, 3) = std::polar(1.0, s.nominal("phi"));
      s.fidelity = FidelityKind::kGate;
      break;
    }
    case 7: {
      const Matrix had = (sx + sz) / std::sqrt(2.0);
      s.target_superop = kron(had, had.conjugate());
      s.evolution = EvolutionKind::kLindblad;
      s.fidelity = FidelityKind::kSuperop;
      break;
    }
    case 8: {
      const double h = s.nominal("fourier_harmonics");
      if (h != std::round(h) || h < 1 || h > 50) {
        throw std::invalid_argument("Task VIII: fourier_harmonics must be an integer in [1, 50]");
      }
      s.target_unitary = qft(4);
      s.fidelity = FidelityKind::kGate;
      break;
    }
    case 9:
      s.initial_state = basis_state(3, 0);
      s.target_state = basis_state(3, 2);
      s.evolution = EvolutionKind::kEffective;
      s.fidelity = FidelityKind::kState;
      break;
    case 10: {
      const double phi = s.nominal("phi"), theta = s.nominal("theta");
      s.target_unitary = matrix_exponential(sz, complex{0.0, -phi / 2.0}) *
                         matrix_exponential(sx, complex{0.0, -theta / 2.0});
      s.fidelity = FidelityKind::kGate;
      break;
    }
    case 11:
      s.target_symplectic = matrix_exponential(ops->form);
      s.evolution = EvolutionKind::kSymplectic;
      s.fidelity = FidelityKind::kSuperop;
      break;
    case 12: {
      s.target_unitary = Matrix::Identity(8, 8);
      s.target_unitary(6, 6) = 0.0;
      s.target_unitary(7, 7) = 0.0;
      s.target_unitary(6, 7) = 1.0;
      s.target_unitary(7, 6) = 1.0;
      s.fidelity = FidelityKind::kGate;
      break;
    }
    case 13: {
      const double nc_raw = s.nominal("N_c");
      const int nc = static_cast<int>(nc_raw);
      const int dim = 2 * nc + 1;
      s.hilbert_dim = dim;
      const double ng = s.nominal("n_g");
      Matrix charge = Matrix::Zero(dim, dim), hop = Matrix::Zero(dim, dim), q = Matrix::Zero(dim, dim);
      for (int i = 0; i < dim; ++i) {
        const int j = i - nc;
        charge(i, i) = 4.0 * (j - ng) * (j - ng);
        q(i, i) = -2.0 * j;
        if (i + 1 < dim) {
          hop(i, i + 1) = -0.5;
          hop(i + 1, i) = -0.5;
        }
      }
      ops->op = {charge, hop, q};
      const RealMatrix h0 = (s.nominal("E_C") * charge + s.nominal("E_J") * hop).real();
      s.logical_basis = lowest_two(h0);
      s.target_unitary = sx;
      s.fidelity = FidelityKind::kGate;
      break;
    }
    case 14: {
      const double lambda = s.nominal("lambda");
      Matrix n1 = Matrix::Zero(3, 3), n2 = Matrix::Zero(3, 3), mx = Matrix::Zero(3, 3),
             my = Matrix::Zero(3, 3);
      n1(1, 1) = 1.0;
      n2(2, 2) = 1.0;
      mx(0, 1) = 1.0;
      mx(1, 2) = lambda;
      mx = Matrix(mx + mx.adjoint());
      my(0, 1) = -kImag;
      my(1, 2) = -kImag * lambda;
      my = Matrix(my + my.adjoint());
      ops->op = {n1, n2, mx, my};
      s.initial_state = basis_state(3, 0);
      s.target_state = basis_state(3, 1);
      s.fidelity = FidelityKind::kState;
      break;
    }
    case 15:
      s.initial_operator = ops->op[3];
      s.target_operator = ops->op[1];
      s.evolution = EvolutionKind::kConjugation;
      s.fidelity = FidelityKind::kTransfer;
      break;
    case 16:
      s.target_unitary = id2;
      s.fidelity = FidelityKind::kGate;
      break;
    default:
      break;
  }
}

}  // namespace

TaskSpec build_task(int id, const TaskOverrides& overrides) {
  const Defaults d = grid_defaults(id);
  TaskSpec s;
  s.id = id;
  s.fixture_seed = overrides.fixture_seed.value_or(0);
  if (overrides.fixture_seed && id != 5 && id != 10) {
    throw std::invalid_argument("task " + roman(id) + " has no seeded fixture");
  }
  const bool grid_override = overrides.n_slices || overrides.total_time;
  if (grid_override && overrides.strict && d.grid_fixed) {
    throw std::invalid_argument("task " + roman(id) +
                                " has a fixed benchmark grid; overrides are refused in strict mode");
  }
  s.grid = TimeGrid(overrides.n_slices.value_or(d.n_slices), overrides.total_time.value_or(d.total_time));
  s.grid_benchmark_fixed = d.grid_fixed && !grid_override;
  populate(s);
  for (const auto& [name, value] : overrides.params) {
    auto it = std::find_if(s.params.begin(), s.params.end(),
                           [&](const Parameter& p) { return p.name == name; });
    if (it == s.params.end()) {
      throw std::invalid_argument("task " + roman(id) + " has no parameter '" + name + "'");
    }
    if (it->benchmark_fixed) {
      throw std::invalid_argument("parameter '" + name + "' of task " + roman(id) +
                                  " is fixed by the benchmark definition");
    }
    if (!std::isfinite(value)) throw std::invalid_argument("parameter '" + name + "' must be finite");
    it->value = value;
    it->nominal = value;
  }
  finalize(s);
  return s;
}

std::string NoiseAssignment::signs() const {
  std::string out;
  for (const auto& [name, delta] : deltas) out += delta > 0 ? '+' : (delta < 0 ? '-' : '0');
  return out;
}

std::pair<TaskSpec, NoiseAssignment> apply_noise(const TaskSpec& spec, double sigma,
                                                 const std::vector<int>& signs) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("apply_noise: sigma must be finite and >= 0");
  }
  if (signs.size() != spec.noise_sign_count()) {
    throw std::invalid_argument("apply_noise: expected " + std::to_string(spec.noise_sign_count()) +
                                " signs");
  }
  for (int sgn : signs) {
    if (sgn != 1 && sgn != -1) throw std::invalid_argument("apply_noise: signs must be +1 or -1");
  }
  NoiseAssignment a;
  a.sigma = sigma;
  TaskSpec out = spec;
  if (sigma == 0.0) return {out, a};
  std::size_t next = 0;
  std::vector<std::pair<std::string, int>> group_sign;
  for (auto& p : out.params) {
    if (!p.noise_sensitive) continue;
    int sgn = 0;
    auto it = std::find_if(group_sign.begin(), group_sign.end(),
                           [&](const auto& g) { return g.first == p.noise_group; });
    if (!p.noise_group.empty() && it != group_sign.end()) {
      sgn = it->second;
    } else {
      sgn = signs[next++];
      if (!p.noise_group.empty()) group_sign.emplace_back(p.noise_group, sgn);
    }
    const double delta = sgn * sigma;
    p.value = p.nominal * (1.0 + delta);
    a.deltas.emplace_back(p.name, delta);
  }
  return {out, a};
}

std::pair<TaskSpec, NoiseAssignment> apply_noise(const TaskSpec& spec, double sigma,
                                                 std::uint64_t seed) {
  const auto signs = draw_noise_signs(seed, spec.noise_sign_count());
  auto result = apply_noise(spec, sigma, signs);
  result.second.seed = seed;
  return result;
}

Matrix slice_hamiltonian(const TaskSpec& s, const RealMatrix& u, int k) {
  const auto& op = s.ops->op;
  const double t = s.grid.midpoint(k);
  const double T = s.grid.total_time();
  switch (s.id) {
    case 1: {
      const double tau = t / T;
      const double delta = s.value("Delta0") * (1.0 + tau * tau * tau);
      const double nu = s.value("h0") + (s.value("hf") - s.value("h0")) * smoothstep(tau);
      return delta * op[0] + nu * op[2] - u(0, k) * op[1];
    }
    case 2:
      return s.value("omega") * (std::cos(u(0, k)) * op[0] + std::cos(u(1, k)) * op[1]) +
             s.value("beta") * op[2];
    case 3:
      return s.value("Delta") * op[0] + u(0, k) * op[1];
    case 4:
      return 0.5 * s.value("Omega") * (std::cos(u(0, k)) * op[0] + std::sin(u(0, k)) * op[1]);
    case 5:
      return s.value("alpha1") * op[0] + s.value("beta1") * op[1] + s.value("alpha2") * op[2] +
             s.value("beta2") * op[3] + u(0, k) * op[4];
    case 6: {
      Matrix h = (s.value("kappa") - 1.0) * op[0];
      for (int c = 0; c < 7; ++c) h += u(c, k) * op[static_cast<std::size_t>(c + 1)];
      return h;
    }
    case 7:
      return (0.5 * s.value("omega_q") + u(0, k)) * op[0] + (0.5 * s.value("Delta") + u(1, k)) * op[1];
    case 8: {
      Matrix h = s.value("J") * op[0];
      for (int c = 0; c < 4; ++c) h += u(c, k) * op[static_cast<std::size_t>(c + 1)];
      return h;
    }
    case 9: {
      Matrix h = Matrix::Zero(3, 3);
      h(0, 0) = s.value("Delta_P");
      h(0, 1) = h(1, 0) = -0.5 * u(0, k);
      h(1, 1) = complex{0.0, -s.value("gamma")};
      h(1, 2) = h(2, 1) = -0.5 * u(1, k);
      h(2, 2) = s.value("Delta_S");
      return h;
    }
    case 10:
      return u(0, k) * op[0] + u(1, k) * op[1] + u(2, k) * op[2];
    case 12: {
      Matrix h = s.value("w1") * op[0] + s.value("w2") * op[1] + s.value("w3") * op[2];
      for (int c = 0; c < 18; ++c) h += u(c, k) * op[static_cast<std::size_t>(c + 3)];
      return h;
    }
    case 13:
      return s.value("E_C") * op[0] + s.value("E_J") * op[1] + u(0, k) * op[2];
    case 14:
      return u(2, k) * (op[0] + 2.0 * op[1]) - s.value("alpha") * op[1] + 0.5 * u(0, k) * op[2] +
             0.5 * u(1, k) * op[3];
    case 15:
      return 2.0 * kPi * s.value("J") * op[0] + u(0, k) * op[1] + u(1, k) * op[2] +
             u(2, k) * op[3] + u(3, k) * op[4];
    case 16: {
      const double beta = s.value("beta0") + s.value("beta1") * t + s.value("beta2") * t * t;
      return 0.5 * beta * op[0] + 0.5 * u(0, k) * op[1];
    }
    default:
      throw std::logic_error("slice_hamiltonian: task " + roman(s.id) + " has no Hilbert-space Hamiltonian");
  }
}

RealMatrix slice_quadratic_form(const TaskSpec& s, const RealMatrix& u, int k) {
  const double w1 = s.value("omega1"), w2 = s.value("omega2"), g = s.value("g1");
  RealMatrix a(4, 4);
  a << w1, 0, g, 0,
       0, w1, 0, g,
       g, 0, w2, 0,
       0, g, 0, w2;
  return a + u(0, k) * s.ops->control_real;
}

namespace {

void check_shape(const TaskSpec& s, const RealMatrix& u) {
  if (u.rows() != s.n_channels() || u.cols() != s.grid.n_slices()) {
    throw std::invalid_argument("protocol shape " + std::to_string(u.rows()) + "x" +
                                std::to_string(u.cols()) + " does not match task " + roman(s.id) +
                                " (" + std::to_string(s.n_channels()) + "x" +
                                std::to_string(s.grid.n_slices()) + ")");
  }
}

/// Applies bound policies. Returns false when a penalty applies.
bool bounded_amplitudes(const TaskSpec& s, const RealMatrix& in, RealMatrix& out) {
  if (!in.allFinite()) return false;
  out = in;
  for (int c = 0; c < s.n_channels(); ++c) {
    const Channel& ch = s.channels[static_cast<std::size_t>(c)];
    if (ch.policy == BoundPolicy::kNone) continue;
    for (Eigen::Index k = 0; k < out.cols(); ++k) {
      double& v = out(c, k);
      if (v >= ch.lower && v <= ch.upper) continue;
      if (ch.policy == BoundPolicy::kPenalty) return false;
      v = std::clamp(v, ch.lower, ch.upper);
    }
  }
  return true;
}

Matrix closed_propagator(const TaskSpec& s, const RealMatrix& u) {
  std::vector<Matrix> hs;
  hs.reserve(static_cast<std::size_t>(s.grid.n_slices()));
  for (int k = 0; k < s.grid.n_slices(); ++k) hs.push_back(slice_hamiltonian(s, u, k));
  return propagate_unitary(hs, s.grid, s.time_scale);
}

double fidelity_of(const TaskSpec& s, const RealMatrix& u) {
  switch (s.evolution) {
    case EvolutionKind::kUnitary:
    case EvolutionKind::kConjugation: {
      const Matrix U = closed_propagator(s, u);
      if (s.fidelity == FidelityKind::kState) {
        return state_fidelity(s.target_state, U * s.initial_state);
      }
      if (s.fidelity == FidelityKind::kTransfer) {
        return transfer_efficiency(U * s.initial_operator * U.adjoint(), s.target_operator);
      }
      if (s.id == 13) {
        const Matrix logical = s.logical_basis.adjoint() * U * s.logical_basis;
        return gate_overlap(s.target_unitary, logical, 2);
      }
      return gate_overlap(s.target_unitary, U, s.hilbert_dim);
    }
    case EvolutionKind::kLindblad: {
      std::vector<Matrix> hs;
      for (int k = 0; k < s.grid.n_slices(); ++k) hs.push_back(slice_hamiltonian(s, u, k));
      const Matrix e = propagate_lindblad(hs, s.value("gamma"), s.grid, s.time_scale);
      return superop_fidelity(s.target_superop, e, 2);
    }
    case EvolutionKind::kEffective: {
      std::vector<Matrix> hs;
      for (int k = 0; k < s.grid.n_slices(); ++k) hs.push_back(slice_hamiltonian(s, u, k));
      const Vector psi = propagate_effective(hs, s.grid, s.initial_state, s.time_scale);
      return state_fidelity(s.target_state, psi);
    }
    case EvolutionKind::kSymplectic: {
      std::vector<RealMatrix> as;
      for (int k = 0; k < s.grid.n_slices(); ++k) as.push_back(slice_quadratic_form(s, u, k));
      const RealMatrix S = propagate_symplectic(as, s.ops->form, s.grid);
      return superop_fidelity(s.target_symplectic, S, 2);
    }
  }
  return 0.0;
}

}  // namespace

double evaluate_protocol(const TaskSpec& spec, const RealMatrix& amplitudes) {
  check_shape(spec, amplitudes);
  RealMatrix u;
  if (!bounded_amplitudes(spec, amplitudes, u)) return 0.0;
  try {
    const double f = fidelity_of(spec, u);
    return std::isfinite(f) ? f : 0.0;
  } catch (const std::exception&) {
    return 0.0;
  }
}

Matrix propagator(const TaskSpec& spec, const RealMatrix& amplitudes) {
  check_shape(spec, amplitudes);
  if (spec.evolution != EvolutionKind::kUnitary && spec.evolution != EvolutionKind::kConjugation) {
    throw std::invalid_argument("task " + roman(spec.id) + " is not a closed-system task");
  }
  RealMatrix u = amplitudes;
  for (int c = 0; c < spec.n_channels(); ++c) {
    const Channel& ch = spec.channels[static_cast<std::size_t>(c)];
    if (ch.bounded()) u.row(c) = u.row(c).cwiseMax(ch.lower).cwiseMin(ch.upper);
  }
  return closed_propagator(spec, u);
}

}  // namespace qctrl::tasks
