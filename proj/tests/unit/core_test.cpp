// Copyright 2026 The VISTA Authors
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

#include <gtest/gtest.h>

#include <cmath>

#include "vista/core.hpp"
#include "vista/errors.hpp"

namespace vista {
namespace {

TEST(Kron, IdentityTimesIdentity) {
  EXPECT_LE(max_abs_diff(kron(identity(2), identity(2)), identity(4)), 1e-15);
}

TEST(Kron, ZZDiagonal) {
  const DenseOperator zz = kron(pauli(Axis::Z), pauli(Axis::Z));
  const double expected[4] = {1, -1, -1, 1};
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(zz(i, i), Complex(expected[i], 0.0));
    for (int j = 0; j < 4; ++j) {
      if (i != j) EXPECT_EQ(zz(i, j), Complex(0.0, 0.0));
    }
  }
}

TEST(Kron, XZTimesZXIsYY) {
  const DenseOperator a = kron(pauli(Axis::X), pauli(Axis::Z));
  const DenseOperator b = kron(pauli(Axis::Z), pauli(Axis::X));
  // Explicit 4x4 product: (X Z) (x) (Z X) = (-i Y) (x) (i Y) = Y (x) Y.
  DenseOperator yy = DenseOperator::Zero(4, 4);
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  EXPECT_LE(max_abs_diff(a * b, yy), 1e-15);
  // Each factor anticommutes, so the two-site products commute.
  EXPECT_LE(max_abs_diff(a * b, b * a), 1e-15);
  EXPECT_LE(max_abs_diff(kron(pauli(Axis::X), identity(2)) * kron(pauli(Axis::Z), identity(2)),
                         -(kron(pauli(Axis::Z), identity(2)) * kron(pauli(Axis::X), identity(2)))),
            1e-15);
}

TEST(Kron, RejectsOversizedResult) {
  const DenseOperator big = identity(1 << 6);
  EXPECT_THROW(kron(big, big), DimensionError);
}

TEST(Kron, RejectsNonPowerOfTwo) {
  EXPECT_THROW(kron(identity(3), identity(2)), DimensionError);
}

TEST(CollectiveOperator, SingleQubitZ) {
  EXPECT_LE(max_abs_diff(collective_operator(1, Axis::Z), pauli(Axis::Z)), 0.0);
}

TEST(CollectiveOperator, AllUpEigenvalue) {
  const DenseOperator h = collective_operator(3, Axis::Z);
  DenseVector zero = DenseVector::Zero(8);
  zero(0) = 1.0;
  EXPECT_LE((h * zero - 3.0 * zero).cwiseAbs().maxCoeff(), 1e-15);
}

double variance_qfi(int n) {
  const DenseVector ghz = ghz_vector(n);
  const DenseOperator h = collective_operator(n, Axis::X);
  return 4.0 * (expectation(h * h, ghz).real() - std::pow(expectation(h, ghz).real(), 2));
}

TEST(CollectiveOperator, GhzXMomentsTwoQubits) {
  // For n = 2 the cross term <X1 X2> = 1 survives: <H^2> = 2 + 2 = 4.
  const DenseVector ghz = ghz_vector(2);
  const DenseOperator h = collective_operator(2, Axis::X);
  EXPECT_NEAR(expectation(h, ghz).real(), 0.0, 1e-12);
  EXPECT_NEAR(expectation(h * h, ghz).real(), 4.0, 1e-12);
  EXPECT_NEAR(variance_qfi(2), 16.0, 1e-12);
}

TEST(CollectiveOperator, GhzXQfiLinearAboveTwoQubits) {
  for (int n = 3; n <= 8; ++n) EXPECT_NEAR(variance_qfi(n), 4.0 * n, 1e-10) << "n=" << n;
}

TEST(CollectiveOperator, HermitianAndGuarded) {
  EXPECT_TRUE(is_hermitian(collective_operator(4, Axis::X)));
  EXPECT_THROW(collective_operator(0, Axis::Z), DimensionError);
  EXPECT_THROW(collective_operator(kMaxOperatorQubits + 1, Axis::Z), DimensionError);
}

TEST(TraceProduct, PurityOfPureState) {
  const DenseOperator rho = outer(ghz_vector(3));
  EXPECT_NEAR(trace_product(rho, rho), 1.0, 1e-12);
}

TEST(TraceProduct, MaximallyMixed) {
  for (int dim : {2, 4, 8}) {
    const DenseOperator mixed = identity(dim) / static_cast<double>(dim);
    EXPECT_NEAR(trace_product(mixed, identity(dim)) / dim, 1.0 / dim, 1e-15);
  }
}

TEST(TraceProduct, OrthogonalGhzPhases) {
  const int n = 4;
  auto ghz_at = [&](double theta) {
    DenseVector v = ghz_vector(n);
    v(0) *= std::polar(1.0, -n * theta);
    v(v.size() - 1) *= std::polar(1.0, n * theta);
    return outer(v);
  };
  EXPECT_NEAR(trace_product(ghz_at(0.3), ghz_at(0.3 + std::acos(-1.0) / 8.0)), 0.0,
              1e-12);
}

TEST(TraceProduct, RejectsMismatchAndNonHermitian) {
  EXPECT_THROW(trace_product(identity(2), identity(4)), DimensionError);
  DenseOperator a = identity(2);
  a(0, 1) = Complex(0.0, 1.0);
  EXPECT_THROW(trace_product(a, identity(2)), Error);
}

TEST(TraceProduct, Symmetric) {
  DenseOperator a = outer(ghz_vector(2));
  DenseOperator b = 0.5 * collective_operator(2, Axis::X) + identity(4) * 0.25;
  EXPECT_NEAR(trace_product(a, b), trace_product(b, a), 1e-12);
}

TEST(Purity, BoundedByDimension) {
  for (int n = 1; n <= 4; ++n) {
    const int dim = 1 << n;
    EXPECT_NEAR(purity(identity(dim) / static_cast<double>(dim)), 1.0 / dim, 1e-10);
    EXPECT_NEAR(purity(outer(ghz_vector(n))), 1.0, 1e-10);
  }
}

TEST(Stabilizers, CommuteForEvenAnticommuteForOdd) {
  for (int n = 2; n <= 6; ++n) {
    const DenseOperator x = tensor_power(n, Axis::X);
    const DenseOperator z = tensor_power(n, Axis::Z);
    const DenseOperator r = n % 2 == 0 ? commutator(x, z) : anticommutator(x, z);
    EXPECT_EQ(r.cwiseAbs().maxCoeff(), 0.0) << "n=" << n;
  }
}

TEST(Ghz, PlusOneEigenvectorOfXStabilizer) {
  for (int n = 1; n <= kMaxOperatorQubits; ++n) {
    const DenseVector g = ghz_vector(n);
    EXPECT_NEAR(expectation(tensor_power(n, Axis::X), g).real(), 1.0, 1e-12);
  }
  EXPECT_EQ(ghz_vector(kMaxVectorQubits).size(), 1 << kMaxVectorQubits);
  EXPECT_THROW(ghz_vector(kMaxVectorQubits + 1), DimensionError);
}

TEST(Bitstring, MostSignificantQubitFirst) {
  const Bitstring b(3, 0b100);
  EXPECT_TRUE(b.bit(0));
  EXPECT_FALSE(b.bit(2));
  EXPECT_EQ(b.weight(), 1);
  EXPECT_EQ(qubit_mask(3, 0), 4u);
  EXPECT_EQ(qubit_mask(3, 2), 1u);
}

}  // namespace
}  // namespace vista
