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

#include "vista/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "vista/errors.hpp"

namespace vista {

double qfi_uhlmann(const DenseOperator& rho, const DenseOperator& drho) {
  if (rho.rows() != rho.cols() || drho.rows() != rho.rows() ||
      drho.cols() != rho.cols()) {
    throw DimensionError("state and derivative dimensions differ");
  }
  if (!is_hermitian(rho, 1e-8) || !is_hermitian(drho, 1e-8)) {
    throw DomainError("QFI needs Hermitian state and derivative");
  }
  if (std::abs(drho.trace()) > 1e-8) {
    throw DomainError("state derivative must be traceless");
  }
  const Eigen::MatrixXcd r = rho;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(r);
  if (es.info() != Eigen::Success) {
    throw NumericalConsistencyError("eigendecomposition failed");
  }
  const Eigen::VectorXd& p = es.eigenvalues();
  const Eigen::MatrixXcd& u = es.eigenvectors();
  const Eigen::MatrixXcd d = u.adjoint() * drho * u;
  double f = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    for (Eigen::Index j = 0; j < p.size(); ++j) {
      if (i == j) continue;
      const double s = p(i) + p(j);
      if (s < 1e-12) continue;
      f += std::norm(d(i, j)) / s;
    }
  }
  return 2.0 * f;
}

double q_hs(const DenseFamily& probe, const DenseFamily& ansatz, double theta,
            double h) {
  if (!(h > 0.0)) throw DomainError("step must be positive");
  const DenseOperator rho = probe(theta);
  const DenseOperator sp = ansatz(theta + h);
  const DenseOperator s0 = ansatz(theta);
  const DenseOperator sm = ansatz(theta - h);
  const double second =
      -(trace_product(sp, rho) - 2.0 * trace_product(s0, rho) +
        trace_product(sm, rho)) /
      (h * h);
  const DenseOperator ds = (sp - sm) / (2.0 * h);
  const DenseOperator dr = (probe(theta + h) - probe(theta - h)) / (2.0 * h);
  const double first = trace_product(ds, dr);
  const double scale = std::max(std::abs(second), std::abs(first));
  if (std::abs(second - first) > 1e-4 * scale + 1e-9) {
    throw NumericalConsistencyError(
        "second-difference and first-difference estimates disagree");
  }
  return second;
}

double q_hs(const DenseFamily& family, double theta, double h) {
  return q_hs(family, family, theta, h);
}

double q_hs_dephasing(int n, double gamma, double gamma_circuit) {
  return 2.0 * n * n * std::exp(-2.0 * n * (gamma + gamma_circuit));
}

double q_hs_ampdamp_pure(int n, double gamma) {
  return 2.0 * n * n * std::exp(-0.5 * n * gamma);
}

double q_hs_qn_dephasing(int n, double gamma) {
  const double e = std::exp(-4.0 * n * gamma);
  return 4.0 * n * n * e / std::sqrt(2.0 * (1.0 + e));
}

namespace {

// Purity of the damped GHZ state.
double ampdamp_purity(int n, double gamma) {
  const double a = std::exp(-gamma);
  return 0.25 + 0.5 * std::pow(1.0 - a, n) + 0.5 * std::exp(-n * gamma) +
         0.25 * std::pow(a * a + (1.0 - a) * (1.0 - a), n);
}

}  // namespace

double q_hs_qn_ampdamp(int n, double gamma) {
  return 2.0 * n * n * std::exp(-n * gamma) / std::sqrt(ampdamp_purity(n, gamma));
}

std::string to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::PureDephasing:
      return "pure_dephasing";
    case BoundKind::UnnormDephasing:
      return "unnorm_dephasing";
    case BoundKind::QnDephasing:
      return "qn_dephasing";
    case BoundKind::PureAmpDamp:
      return "pure_ampdamp";
    case BoundKind::QnAmpDamp:
      return "qn_ampdamp";
  }
  return "unknown";
}

BoundKind bound_kind_from_string(const std::string& s) {
  for (BoundKind k : {BoundKind::PureDephasing, BoundKind::UnnormDephasing,
                      BoundKind::QnDephasing, BoundKind::PureAmpDamp,
                      BoundKind::QnAmpDamp}) {
    if (to_string(k) == s) return k;
  }
  throw ConfigError("unknown bound kind '" + s + "'");
}

BoundCurve crb_curve(BoundKind kind, const std::vector<int>& n_grid,
                     double gamma, std::int64_t shots) {
  if (!(gamma >= 0.0)) throw DomainError("rate must be non-negative");
  if (shots < 1) throw DomainError("shot count must be at least 1");
  BoundCurve c;
  c.kind = kind;
  c.n_grid = n_grid;
  c.gamma = gamma;
  c.shots = shots;
  for (int n : n_grid) {
    if (n < 1) throw DomainError("qubit count must be positive");
    double q = 0.0;
    switch (kind) {
      case BoundKind::PureDephasing:
        q = q_hs_dephasing(n, gamma, 0.0);
        break;
      case BoundKind::UnnormDephasing:
        q = q_hs_dephasing(n, gamma, gamma);
        break;
      case BoundKind::QnDephasing:
        q = q_hs_qn_dephasing(n, gamma);
        break;
      case BoundKind::PureAmpDamp:
        q = q_hs_ampdamp_pure(n, gamma);
        break;
      case BoundKind::QnAmpDamp:
        q = q_hs_qn_ampdamp(n, gamma);
        break;
    }
    c.values.push_back(1.0 / std::sqrt(2.0 * static_cast<double>(shots) * q));
  }
  return c;
}

double qfi_ratio_ampdamp(int n, double gamma) {
  if (!(gamma >= 0.0)) throw DomainError("rate must be non-negative");
  return std::exp(-0.5 * n * gamma) / std::sqrt(ampdamp_purity(n, gamma));
}

double qfi_ratio_ampdamp_expansion(int n, double gamma) {
  return 1.0 - n * (n + 1.0) * gamma * gamma / 8.0;
}

ScalingFit fit_scaling(const std::vector<double>& errors,
                       const std::vector<int>& n_grid) {
  if (errors.size() != n_grid.size()) {
    throw DimensionError("errors and grid differ in length");
  }
  if (errors.size() < 4) throw DomainError("scaling fit needs four or more points");
  std::vector<double> x, y;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!(errors[i] > 0.0) || n_grid[i] < 1) {
      throw DomainError("scaling fit needs positive errors and qubit counts");
    }
    x.push_back(std::log(static_cast<double>(n_grid[i])));
    y.push_back(std::log(errors[i]));
  }
  const double m = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / m;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / m;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw DomainError("scaling fit needs distinct qubit counts");
  ScalingFit fit;
  fit.exponent = sxy / sxx;
  fit.intercept = my - fit.exponent * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.intercept + fit.exponent * x[i]);
    ss_res += r * r;
  }
  fit.r2 = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  return fit;
}

GammaCalibration GammaCalibration::fit(std::vector<double> gamma_true,
                                       std::vector<double> gamma_hat) {
  if (gamma_true.size() != gamma_hat.size() || gamma_true.size() < 2) {
    throw CalibrationError("calibration needs two or more matched points");
  }
  std::vector<std::size_t> order(gamma_true.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return gamma_true[a] < gamma_true[b];
  });
  GammaCalibration c;
  for (std::size_t i : order) {
    c.true_.push_back(gamma_true[i]);
    c.hat_.push_back(gamma_hat[i]);
  }
  for (std::size_t i = 1; i < c.hat_.size(); ++i) {
    if (!(c.true_[i] > c.true_[i - 1]) || !(c.hat_[i] > c.hat_[i - 1])) {
      throw CalibrationError(
          "learned decay is not strictly increasing in the true decay");
    }
  }
  return c;
}

double GammaCalibration::apply(double gamma_hat) const {
  // Segment index, clamped so the end segments extrapolate linearly.
  const auto it = std::upper_bound(hat_.begin(), hat_.end(), gamma_hat);
  std::size_t hi = static_cast<std::size_t>(it - hat_.begin());
  hi = std::clamp<std::size_t>(hi, 1, hat_.size() - 1);
  const std::size_t lo = hi - 1;
  const double t = (gamma_hat - hat_[lo]) / (hat_[hi] - hat_[lo]);
  return true_[lo] + t * (true_[hi] - true_[lo]);
}

}  // namespace vista
