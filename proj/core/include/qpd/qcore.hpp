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

#ifndef QPD_QCORE_HPP_
#define QPD_QCORE_HPP_

// Fixed-size complex linear algebra for two qubits.
//
// Basis order is (|CC>, |CD>, |DC>, |DD>) and Alice is always the first
// tensor factor, so index = 2 * alice_bit + bob_bit with C = 0 and D = 1.

#include <algorithm>
#include <array>
#include <complex>
#include <cstddef>

namespace qpd {

using Complex = std::complex<double>;

inline constexpr double kUnitaryTolerance = 1e-12;
inline constexpr double kNormTolerance = 1e-12;

// Square complex matrix stored row-major.
template <std::size_t N>
class SquareMatrix {
 public:
  static constexpr std::size_t kDim = N;

  constexpr SquareMatrix() = default;
  constexpr explicit SquareMatrix(const std::array<Complex, N * N>& entries)
      : entries_(entries) {}

  static SquareMatrix Identity() {
    SquareMatrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  Complex& operator()(std::size_t row, std::size_t col) {
    return entries_[row * N + col];
  }
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return entries_[row * N + col];
  }

  const std::array<Complex, N * N>& entries() const { return entries_; }

  SquareMatrix Adjoint() const {
    SquareMatrix out;
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t c = 0; c < N; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
  }

  friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
    SquareMatrix out;
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t k = 0; k < N; ++k) {
        const Complex ark = a(r, k);
        for (std::size_t c = 0; c < N; ++c) out(r, c) += ark * b(k, c);
      }
    return out;
  }

  friend SquareMatrix operator*(Complex s, const SquareMatrix& m) {
    SquareMatrix out = m;
    for (auto& e : out.entries_) e *= s;
    return out;
  }

  friend SquareMatrix operator+(const SquareMatrix& a, const SquareMatrix& b) {
    SquareMatrix out = a;
    for (std::size_t i = 0; i < N * N; ++i) out.entries_[i] += b.entries_[i];
    return out;
  }

 private:
  std::array<Complex, N * N> entries_{};
};

using Operator2 = SquareMatrix<2>;
using Operator4 = SquareMatrix<4>;

// Largest entrywise modulus of a - b.
template <std::size_t N>
double MaxAbsDiff(const SquareMatrix<N>& a, const SquareMatrix<N>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < N * N; ++i)
    worst = std::max(worst, std::abs(a.entries()[i] - b.entries()[i]));
  return worst;
}

// Measurement outcomes of one round, in basis order.
enum class Outcome2 : std::size_t { kCC = 0, kCD = 1, kDC = 2, kDD = 3 };

using Probabilities = std::array<double, 4>;

class TwoQubitState {
 public:
  TwoQubitState() = default;
  // No normalization is enforced here; consumers that need it check.
  explicit TwoQubitState(const std::array<Complex, 4>& amplitudes)
      : amplitudes_(amplitudes) {}

  static TwoQubitState Basis(Outcome2 which);

  const std::array<Complex, 4>& amplitudes() const { return amplitudes_; }
  const Complex& operator[](std::size_t i) const { return amplitudes_[i]; }

  double SquaredNorm() const;

 private:
  std::array<Complex, 4> amplitudes_{};
};

// Tensor product a (x) b; a acts on Alice's qubit.
Operator4 Kron2(const Operator2& a, const Operator2& b);

// Matrix-vector product. Throws ProtocolError when m is not unitary.
TwoQubitState Apply(const Operator4& m, const TwoQubitState& s);

// Born-rule probabilities in basis order. Throws NormalizationError when the
// squared norm differs from 1 by more than kNormTolerance.
Probabilities OutcomeProbabilities(const TwoQubitState& s);

// True iff max |M^dagger M - I| <= tol entrywise. Throws RangeError if tol <= 0.
template <std::size_t N>
bool CheckUnitary(const SquareMatrix<N>& m, double tol = kUnitaryTolerance);

extern template bool CheckUnitary<2>(const SquareMatrix<2>&, double);
extern template bool CheckUnitary<4>(const SquareMatrix<4>&, double);

// Determinant of a 2x2 operator.
Complex Determinant(const Operator2& m);

}  // namespace qpd

#endif  // QPD_QCORE_HPP_
