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

#include "vista/core.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "vista/errors.hpp"

namespace vista {

namespace {

void require_vector_qubits(int n) {
  if (n < 1 || n > kMaxVectorQubits) {
    throw DimensionError("qubit count " + std::to_string(n) +
                         " outside [1, " + std::to_string(kMaxVectorQubits) +
                         "]");
  }
}

void require_operator_qubits(int n) {
  if (n < 1 || n > kMaxOperatorQubits) {
    throw DimensionError("operator on " + std::to_string(n) +
                         " qubits exceeds the dense guard of " +
                         std::to_string(kMaxOperatorQubits));
  }
}

void require_same_square(const DenseOperator& a, const DenseOperator& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw DimensionError("operators must be square with equal dimensions");
  }
}

}  // namespace

Bitstring::Bitstring(int n, std::uint64_t index) : n_(n), index_(index) {
  if (n < 1 || n > 63 || index >= (std::uint64_t{1} << n)) {
    throw DimensionError("bitstring index out of range");
  }
}

bool Bitstring::bit(int qubit) const {
  return (index_ & qubit_mask(n_, qubit)) != 0;
}

int Bitstring::weight() const { return std::popcount(index_); }

std::uint64_t qubit_mask(int n, int qubit) {
  return std::uint64_t{1} << (n - 1 - qubit);
}

int qubits_for_dim(Eigen::Index dim) {
  if (dim < 2 || !std::has_single_bit(static_cast<std::uint64_t>(dim))) {
    throw DimensionError("dimension " + std::to_string(dim) +
                         " is not a power of two");
  }
  return std::countr_zero(static_cast<std::uint64_t>(dim));
}

DenseVector ghz_vector(int n) {
  require_vector_qubits(n);
  const Eigen::Index dim = Eigen::Index{1} << n;
  DenseVector v = DenseVector::Zero(dim);
  const double amp = 1.0 / std::sqrt(2.0);
  v(0) = amp;
  v(dim - 1) = amp;
  return v;
}

DenseOperator pauli(Axis axis) {
  DenseOperator p = DenseOperator::Zero(2, 2);
  if (axis == Axis::X) {
    p(0, 1) = 1.0;
    p(1, 0) = 1.0;
  } else {
    p(0, 0) = 1.0;
    p(1, 1) = -1.0;
  }
  return p;
}

DenseOperator identity(int dim) { return DenseOperator::Identity(dim, dim); }

DenseOperator kron(const DenseOperator& a, const DenseOperator& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols()) {
    throw DimensionError("kron expects square operators");
  }
  const int qa = qubits_for_dim(a.rows());
  const int qb = qubits_for_dim(b.rows());
  require_operator_qubits(qa + qb);
  const Eigen::Index da = a.rows();
  const Eigen::Index db = b.rows();
  DenseOperator out(da * db, da * db);
  for (Eigen::Index i = 0; i < da; ++i) {
    for (Eigen::Index j = 0; j < da; ++j) {
      out.block(i * db, j * db, db, db) = a(i, j) * b;
    }
  }
  return out;
}

DenseOperator collective_operator(int n, Axis axis) {
  require_operator_qubits(n);
  const Eigen::Index dim = Eigen::Index{1} << n;
  DenseOperator h = DenseOperator::Zero(dim, dim);
  for (Eigen::Index a = 0; a < dim; ++a) {
    if (axis == Axis::Z) {
      const int w = std::popcount(static_cast<std::uint64_t>(a));
      h(a, a) = static_cast<double>(n - 2 * w);
    } else {
      for (int q = 0; q < n; ++q) {
        h(a ^ static_cast<Eigen::Index>(qubit_mask(n, q)), a) += 1.0;
      }
    }
  }
  return h;
}

DenseOperator tensor_power(int n, Axis axis) {
  require_operator_qubits(n);
  const Eigen::Index dim = Eigen::Index{1} << n;
  DenseOperator p = DenseOperator::Zero(dim, dim);
  for (Eigen::Index a = 0; a < dim; ++a) {
    if (axis == Axis::Z) {
      const int w = std::popcount(static_cast<std::uint64_t>(a));
      p(a, a) = (w % 2 == 0) ? 1.0 : -1.0;
    } else {
      p(a ^ (dim - 1), a) = 1.0;
    }
  }
  return p;
}

DenseOperator outer(const DenseVector& v) {
  qubits_for_dim(v.size());
  require_operator_qubits(qubits_for_dim(v.size()));
  return v * v.adjoint();
}

double trace_product(const DenseOperator& a, const DenseOperator& b) {
  require_same_square(a, b);
  if (!is_hermitian(a, 1e-8) || !is_hermitian(b, 1e-8)) {
    throw DomainError("trace_product expects Hermitian operators");
  }
  // Tr(ab) = sum_ij a_ij b_ji; with row-major storage b^T is a cheap view.
  const Complex tr = a.cwiseProduct(b.transpose()).sum();
  if (std::abs(tr.imag()) > 1e-8) {
    throw NumericalConsistencyError("Tr(ab) has imaginary residue " +
                                    std::to_string(tr.imag()));
  }
  return tr.real();
}

double purity(const DenseOperator& rho) { return trace_product(rho, rho); }

Complex expectation(const DenseOperator& op, const DenseVector& v) {
  if (op.rows() != v.size() || op.cols() != v.size()) {
    throw DimensionError("operator and vector dimensions differ");
  }
  return v.dot(op * v);
}

bool is_hermitian(const DenseOperator& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double max_abs_diff(const DenseOperator& a, const DenseOperator& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("max_abs_diff on mismatched shapes");
  }
  return (a - b).cwiseAbs().maxCoeff();
}

DenseOperator commutator(const DenseOperator& a, const DenseOperator& b) {
  require_same_square(a, b);
  return a * b - b * a;
}

DenseOperator anticommutator(const DenseOperator& a, const DenseOperator& b) {
  require_same_square(a, b);
  return a * b + b * a;
}

}  // namespace vista
