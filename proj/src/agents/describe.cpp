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


#include "qctrl/agents/describe.hpp"

#include <cmath>
#include <fmt/format.h>

namespace qctrl::agents {

namespace {

using tasks::TaskSpec;

std::string num(double v) { return fmt::format("{:.6g}", v); }

std::string physics(const TaskSpec& s) {
  auto p = [&](const char* name) { return num(s.nominal(name)); };
  switch (s.id) {
    case 1:
      return fmt::format(
          "A single spin-1/2 (Pauli operators sx, sy, sz).\n"
          "H(t) = D(t) sx + h(t) sz - g(t) sy, with tau = t/T,\n"
          "  D(t) = {0} (1 + tau^3),\n"
          "  h(t) = {1} + ({2} - {1}) (10 tau^3 - 15 tau^4 + 6 tau^5).\n"
          "Start: ground state of {0} sx + {1} sz.\n"
          "Goal: ground state of {3} sx + {2} sz at t = T.\n"
          "Score: state fidelity |<goal|psi(T)>|^2.",
          p("Delta0"), p("h0"), p("hf"), num(2.0 * s.nominal("Delta0")));
    case 2:
      return fmt::format(
          "{0} spin-1/2 particles restricted to the symmetric subspace (collective spin J = {1}, "
          "basis |J, m>).\n"
          "H(t) = {2} [cos(x1(t)) Jx + cos(x2(t)) Jy] + {3} Jz^2.\n"
          "Start: |J, m = -J> (all spins down).\n"
          "Goal: the Dicke state with {4} excitations, |J, m = -J + {4}>.\n"
          "Score: state fidelity |<goal|psi(T)>|^2.",
          p("Nq"), num(s.nominal("Nq") / 2.0), p("omega"), p("beta"), p("k"));
    case 3:
      return fmt::format(
          "A two-level system at an avoided crossing.\n"
          "H(t) = D sx + nu(t) sz, where the coupling D is fixed but not disclosed.\n"
          "Start: ground state of D sx - {0} sz.\n"
          "Goal: ground state of D sx + {0} sz at t = T.\n"
          "The control nu(t) must stay within [-{1}, {1}]; any slice outside this range scores zero.\n"
          "Score: state fidelity |<goal|psi(T)>|^2.",
          p("nu0"), p("nu_limit"));
    case 4:
      return fmt::format(
          "A single qubit driven at fixed Rabi frequency with a controllable phase.\n"
          "H(t) = ({0}/2) [cos(alpha(t)) sx + sin(alpha(t)) sy].\n"
          "Goal: the gate exp(-i (pi/2) sz) up to global phase.\n"
          "Score: gate fidelity |Tr(U_goal^dag U(T))|^2 / 4.",
          p("Omega"));
    case 5:
      return fmt::format(
          "Two qubits with fixed local fields and a tunable Ising coupling.\n"
          "H(t) = {0} sx1 + {1} sz1 + {2} sx2 + {3} sz2 + u(t) sz1 sz2.\n"
          "Start: |00>. Goal: |11>.\n"
          "Score: state fidelity |<11|psi(T)>|^2.",
          p("alpha1"), p("beta1"), p("alpha2"), p("beta2"));
    case 6:
      return fmt::format(
          "Two qubits with full local control and an exchange control.\n"
          "H(t) = ({0} - 1) sx1 sx2 + sum over a in {{x, y, z}} [u1a(t) sa1 + u2a(t) sa2]\n"
          "       + udb(t) (sx1 sx2 + sy1 sy2 + sz1 sz2).\n"
          "Goal: the controlled-phase gate diag(1, 1, 1, exp(i {1})) up to global phase.\n"
          "Score: gate fidelity |Tr(U_goal^dag U(T))|^2 / 16.",
          p("kappa"), p("phi"));
    case 7:
      return fmt::format(
          "A qubit with amplitude damping.\n"
          "H(t) = ({0}/2 + uz(t)) sz + ({1}/2 + ux(t)) sx.\n"
          "Lindblad dissipator with jump operator |0><1| at rate {2}.\n"
          "Goal: the Hadamard channel rho -> H rho H.\n"
          "Score: 1 - ||E_goal - E(T)||_F^2 / 8 for the 4x4 superoperators (can be negative).",
          p("omega_q"), p("Delta"), p("gamma"));
    case 8:
      return fmt::format(
          "Two qubits with Heisenberg coupling and local transverse controls.\n"
          "H(t) = {0} (sx1 sx2 + sy1 sy2 + sz1 sz2) + ux1(t) sx1 + uy1(t) sy1 + ux2(t) sx2 + uy2(t) sy2.\n"
          "Goal: the two-qubit quantum Fourier transform F_jk = exp(2 pi i j k / 4) / 2 up to global phase.\n"
          "Score: gate fidelity |Tr(U_goal^dag U(T))|^2 / 16.",
          p("J"));
    case 9:
      return fmt::format(
          "A lossy three-level Lambda system (levels |1>, |2>, |3>); the intermediate level decays at rate {0}.\n"
          "Non-Hermitian effective Hamiltonian in the basis (|1>, |2>, |3>):\n"
          "  [[{1}, -Omega_P/2, 0], [-Omega_P/2, -i {0}, -Omega_S/2], [0, -Omega_S/2, {2}]].\n"
          "Start: |1>. Goal: |3>.\n"
          "Score: |<3|psi(T)>|^2 (population lost through decay is not restored).",
          p("gamma"), p("Delta_P"), p("Delta_S"));
    case 10:
      return fmt::format(
          "A single qubit without drift and with three unbounded controls.\n"
          "H(t) = ux(t) sx + uy(t) sy + uz(t) sz.\n"
          "Goal: exp(-i {0} sz / 2) exp(-i {1} sx / 2) up to global phase.\n"
          "Score: gate fidelity |Tr(U_goal^dag U(T))|^2 / 4.",
          p("phi"), p("theta"));
    case 11:
      return fmt::format(
          "Two coupled harmonic oscillators described by quadratures r = (q1, p1, q2, p2).\n"
          "Quadratic Hamiltonian H = r^T A(t) r / 2 with\n"
          "  A(t) = [[{0} + u(t), 0, {2}, 0], [0, {0} + u(t), 0, {2}], [{2}, 0, {1}, 0], [0, {2}, 0, {1}]].\n"
          "The symplectic propagator obeys dS/dt = Omega A(t) S, S(0) = I, with the 4x4 form Omega = [[0, I2], [-I2, 0]].\n"
          "Goal: S(T) = exp(Omega).\n"
          "Score: 1 - ||S_goal - S(T)||_F^2 / 8.",
          p("omega1"), p("omega2"), p("g1"));
    case 12:
      return fmt::format(
          "Three qubits with fixed local fields and full one- and two-body control.\n"
          "H(t) = {0} sz1 + {1} sz2 + {2} sz3 + sum_j sum_a aj(t) saj + sum over pairs (12, 23, 13) "
          "sum_a aajk(t) saj sak, a in {{x, y, z}}.\n"
          "Goal: the Toffoli gate (flip qubit 3 when qubits 1 and 2 are |1>) up to global phase.\n"
          "Score: gate fidelity |Tr(U_goal^dag U(T))|^2 / 64.",
          p("w1"), p("w2"), p("w3"));
    case 13:
      return fmt::format(
          "A transmon in the charge basis |n>, n = -{0}..{0}.\n"
          "H(t) = 4 {1} (n - {2})^2 - ({3}/2) sum_n (|n><n+1| + |n+1><n|) - 2 V(t) n.\n"
          "Energies in GHz and time in ns; evolution uses exp(-i 2 pi H dt).\n"
          "Goal: an X gate on the two lowest eigenstates of the undriven Hamiltonian.\n"
          "Score: |Tr(X^dag P^dag U(T) P)|^2 / 4, with P the two eigenvectors as columns.",
          p("N_c"), p("E_C"), p("n_g"), p("E_J"));
    case 14:
      return fmt::format(
          "A three-level transmon |0>, |1>, |2> in the rotating frame.\n"
          "H(t) = delta(t) (N1 + 2 N2) - {0} N2 + (Omega_x(t)/2) Mx + (Omega_y(t)/2) My,\n"
          "  N1 = |1><1|, N2 = |2><2|, Mx = |0><1| + {1} |1><2| + h.c., My = -i |0><1| - i {1} |1><2| + h.c.\n"
          "Frequencies in GHz and time in ns; evolution uses exp(-i 2 pi H dt).\n"
          "Start: |0>. Goal: |1> with no population left in |2>.\n"
          "Score: state fidelity |<1|psi(T)>|^2.",
          p("alpha"), p("lambda"));
    case 15:
      return fmt::format(
          "Two heteronuclear spins-1/2 with scalar coupling J = {0} Hz (spin operators S = sigma/2).\n"
          "H(t) = 2 pi J S1z S2z + u1x(t) S1x + u1y(t) S1y + u2x(t) S2x + u2y(t) S2y.\n"
          "Amplitudes in rad/s, time in ms.\n"
          "Start: the operator S2x. Goal: transfer it to S1x.\n"
          "Score: Re Tr(S1x U(T) S2x U(T)^dag).",
          p("J"));
    case 16:
      return fmt::format(
          "A qubit dephased by a time-dependent field.\n"
          "H(t) = (b(t)/2) sz + (Omega(t)/2) sx, b(t) = {0} + {1} t + {2} t^2.\n"
          "Goal: the identity, i.e. the accumulated dephasing must be refocused by time T.\n"
          "Score: gate fidelity |Tr(U(T))|^2 / 4.",
          p("beta0"), p("beta1"), p("beta2"));
    default:
      return s.title;
  }
}

std::string bound_text(const tasks::Channel& c) {
  if (!c.bounded()) return "unbounded";
  return fmt::format("range [{}, {}]", num(c.lower), num(c.upper));
}

}  // namespace

std::string describe_task(const TaskSpec& s) {
  std::string out = fmt::format("TASK {}: {}\n\nPHYSICS\n{}\n\nCONTROLS\n", tasks::roman(s.id), s.title,
                                physics(s));
  for (const auto& c : s.channels) {
    out += fmt::format("- {} ({}{})\n", c.name, bound_text(c),
                       s.amplitude_unit.empty() ? "" : ", " + s.amplitude_unit);
  }
  const std::string unit = s.time_unit.empty() ? "" : " " + s.time_unit;
  out += fmt::format("\nTIME\nT = {}{}, {} piecewise-constant slices of width {}{}.", num(s.grid.total_time()),
                     unit, s.grid.n_slices(), num(s.grid.dt()), unit);
  return out;
}

}  // namespace qctrl::agents
