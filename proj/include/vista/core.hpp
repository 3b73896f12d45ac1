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

#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace vista {

using Complex = std::complex<double>;

// Row-major storage; qubit 0 is the most significant bit of a basis index.
using DenseOperator =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using DenseVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

// State vectors may go up to 14 qubits; operators stop at 10.
inline constexpr int kMaxVectorQubits = 14;
inline constexpr int kMaxOperatorQubits = 10;

// Default absolute tolerance for equality checks.
inline constexpr double kTolerance = 1e-10;

enum class Axis { X, Z };

/// A computational basis label |x> on n qubits.
class Bitstring {
 public:
  Bitstring(int n, std::uint64_t index);

  int size() const { return n_; }
  std::uint64_t index() const { return index_; }
  bool bit(int qubit) const;
  int weight() const;

 private:
  int n_;
  std::uint64_t index_;
};

/// Mask selecting `qubit` in a basis index of an n-qubit register.
std::uint64_t qubit_mask(int n, int qubit);

DenseVector ghz_vector(int n);

DenseOperator pauli(Axis axis);
DenseOperator identity(int dim);

/// Kronecker product; both factors must be square with power-of-two sides.
DenseOperator kron(const DenseOperator& a, const DenseOperator& b);

/// Sum over sites of the single-qubit Pauli `axis`.
DenseOperator collective_operator(int n, Axis axis);

/// Tensor product of n copies of the Pauli `axis`.
DenseOperator tensor_power(int n, Axis axis);

DenseOperator outer(const DenseVector& v);

/// Tr(ab) for Hermitian a, b. The imaginary part is checked and dropped.
double trace_product(const DenseOperator& a, const DenseOperator& b);

double purity(const DenseOperator& rho);

Complex expectation(const DenseOperator& op, const DenseVector& v);

bool is_hermitian(const DenseOperator& a, double tol = kTolerance);

double max_abs_diff(const DenseOperator& a, const DenseOperator& b);

DenseOperator commutator(const DenseOperator& a, const DenseOperator& b);
DenseOperator anticommutator(const DenseOperator& a, const DenseOperator& b);

/// Qubit count for a power-of-two dimension; throws DimensionError otherwise.
int qubits_for_dim(Eigen::Index dim);

}  // namespace vista
