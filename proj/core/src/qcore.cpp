// Copyright 2026 The qpd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qpd/qcore.hpp"

#include <cmath>
#include <string>

#include "qpd/errors.hpp"

namespace qpd {

TwoQubitState TwoQubitState::Basis(Outcome2 which) {
  std::array<Complex, 4> amps{};
  amps[static_cast<std::size_t>(which)] = 1.0;
  return TwoQubitState(amps);
}

double TwoQubitState::SquaredNorm() const {
  double sum = 0.0;
  for (const auto& a : amplitudes_) sum += std::norm(a);
  return sum;
}

Operator4 Kron2(const Operator2& a, const Operator2& b) {
  Operator4 out;
  for (std::size_t ar = 0; ar < 2; ++ar)
    for (std::size_t ac = 0; ac < 2; ++ac)
      for (std::size_t br = 0; br < 2; ++br)
        for (std::size_t bc = 0; bc < 2; ++bc)
          out(2 * ar + br, 2 * ac + bc) = a(ar, ac) * b(br, bc);
  return out;
}

TwoQubitState Apply(const Operator4& m, const TwoQubitState& s) {
  if (!CheckUnitary(m)) {
    throw ProtocolError("apply: operator is not unitary");
  }
  std::array<Complex, 4> out{};
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) out[r] += m(r, c) * s[c];
  return TwoQubitState(out);
}

Probabilities OutcomeProbabilities(const TwoQubitState& s) {
  const double norm = s.SquaredNorm();
  if (!(std::abs(norm - 1.0) <= kNormTolerance)) {
    throw NormalizationError("outcome_probabilities: squared norm is " +
                             std::to_string(norm) + ", expected 1");
  }
  Probabilities p{};
  for (std::size_t i = 0; i < 4; ++i) p[i] = std::norm(s[i]);
  return p;
}

template <std::size_t N>
bool CheckUnitary(const SquareMatrix<N>& m, double tol) {
  if (!(tol > 0.0)) throw RangeError("check_unitary: tolerance must be > 0");
  const SquareMatrix<N> gram = m.Adjoint() * m;
  return MaxAbsDiff(gram, SquareMatrix<N>::Identity()) <= tol;
}

template bool CheckUnitary<2>(const SquareMatrix<2>&, double);
template bool CheckUnitary<4>(const SquareMatrix<4>&, double);

Complex Determinant(const Operator2& m) {
  return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
}

}  // namespace qpd
