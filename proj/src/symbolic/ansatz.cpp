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

#include "qctrl/symbolic/ansatz.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>

namespace qctrl::symbolic {

std::size_t ControlAnsatz::coefficient_count() const {
  std::size_t n = 0;
  for (const auto& ch : channels) n += ch.expression.coefficients().size();
  return n;
}

std::vector<double> ControlAnsatz::initial_values() const {
  std::vector<double> out;
  out.reserve(coefficient_count());
  for (const auto& ch : channels) {
    for (const auto& name : ch.expression.coefficients()) {
      double v = 0.0;
      for (const auto& [key, value] : ch.parameters) {
        if (key == name) {
          v = value;
          break;
        }
      }
      out.push_back(v);
    }
  }
  return out;
}

std::vector<std::string> ControlAnsatz::qualified_names() const {
  std::vector<std::string> out;
  for (const auto& ch : channels) {
    for (const auto& name : ch.expression.coefficients()) out.push_back(ch.channel + "." + name);
  }
  return out;
}

std::optional<Rejection> validate(const ControlAnsatz& ansatz) {
  for (const auto& ch : ansatz.channels) {
    const auto& expr = ch.expression;
    const auto& coeffs = expr.coefficients();
    auto reject = [&](RejectCode code, std::string msg) {
      return Rejection{code, std::move(msg), Span{0, expr.source().size()}, ch.channel};
    };
    if (coeffs.empty()) {
      return reject(RejectCode::kNoCoefficients, "expression has no free coefficients");
    }
    if (coeffs.size() > kMaxCoefficients) {
      return reject(RejectCode::kTooManyCoefficients,
                    std::to_string(coeffs.size()) + " coefficients exceed the limit of " +
                        std::to_string(kMaxCoefficients));
    }
    bool term_has_coeff = false;
    for (int term : expr.additive_terms()) {
      if (expr.references_coefficient(term)) {
        term_has_coeff = true;
        break;
      }
    }
    if (!term_has_coeff) {
      return reject(RejectCode::kNoCoefficientTerm,
                    "no additive term of the expression references a coefficient");
    }
    std::set<std::string> seen;
    for (const auto& [name, value] : ch.parameters) {
      if (!seen.insert(name).second) {
        return reject(RejectCode::kDuplicateParameter, "parameter '" + name + "' given twice");
      }
      if (expr.coefficient_index(name) < 0) {
        return reject(RejectCode::kUnusedParameter,
                      "parameter '" + name + "' does not appear in the expression");
      }
      if (!std::isfinite(value)) {
        return reject(RejectCode::kNonFiniteInitialValue,
                      "parameter '" + name + "' has a non-finite initial value");
      }
      if (value == 0.0) {
        return reject(RejectCode::kZeroInitialValue,
                      "parameter '" + name + "' has initial value 0; coefficients must be non-zero");
      }
    }
    for (const auto& name : coeffs) {
      if (!seen.count(name)) {
        return reject(RejectCode::kUnboundCoefficient,
                      "coefficient '" + name + "' has no initial value");
      }
    }
  }
  return std::nullopt;
}

Result<RealMatrix, Rejection> discretize(const ControlAnsatz& ansatz,
                                         std::span<const double> flat_values,
                                         const TimeGrid& grid) {
  if (flat_values.size() != ansatz.coefficient_count()) {
    throw std::invalid_argument("discretize: coefficient vector has the wrong length");
  }
  RealMatrix out(static_cast<Eigen::Index>(ansatz.channels.size()), grid.n_slices());
  std::size_t offset = 0;
  for (std::size_t c = 0; c < ansatz.channels.size(); ++c) {
    const auto& ch = ansatz.channels[c];
    const std::size_t n = ch.expression.coefficients().size();
    const auto values = flat_values.subspan(offset, n);
    offset += n;
    for (int k = 0; k < grid.n_slices(); ++k) {
      const double t = grid.midpoint(k);
      auto r = ch.expression.evaluate(t, grid.total_time(), values);
      if (!r) {
        const auto& fault = r.error();
        Span span{0, 0};
        if (fault.node >= 0) span = ch.expression.nodes()[static_cast<std::size_t>(fault.node)].span;
        char buf[64];
        std::snprintf(buf, sizeof buf, " at t = %.6g", t);
        return Rejection{RejectCode::kEvaluationFault, fault.reason + buf, span, ch.channel};
      }
      out(static_cast<Eigen::Index>(c), k) = r.value();
    }
  }
  return out;
}

namespace {

template <class F>
std::string render_channels(const ControlAnsatz& ansatz, F&& one) {
  if (ansatz.channels.size() == 1) return one(0);
  std::string out;
  for (std::size_t c = 0; c < ansatz.channels.size(); ++c) {
    if (c) out += "\n";
    out += ansatz.channels[c].channel + "(t) = " + one(c);
  }
  return out;
}

}  // namespace

std::string render(const ControlAnsatz& ansatz, std::span<const double> flat_values) {
  if (flat_values.size() != ansatz.coefficient_count()) {
    throw std::invalid_argument("render: coefficient vector has the wrong length");
  }
  std::vector<std::size_t> offsets;
  std::size_t offset = 0;
  for (const auto& ch : ansatz.channels) {
    offsets.push_back(offset);
    offset += ch.expression.coefficients().size();
  }
  return render_channels(ansatz, [&](std::size_t c) {
    const auto& expr = ansatz.channels[c].expression;
    return expr.render(flat_values.subspan(offsets[c], expr.coefficients().size()));
  });
}

std::string render_symbolic(const ControlAnsatz& ansatz) {
  return render_channels(ansatz,
                         [&](std::size_t c) { return ansatz.channels[c].expression.render(); });
}

}  // namespace qctrl::symbolic
