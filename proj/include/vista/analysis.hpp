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

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "vista/core.hpp"

namespace vista {

/// QFI from the spectral decomposition of rho:
/// 2 sum_{i != j} |<i|drho|j>|^2 / (p_i + p_j), pairs with p_i + p_j < 1e-12
/// skipped.
double qfi_uhlmann(const DenseOperator& rho, const DenseOperator& drho);

using DenseFamily = std::function<DenseOperator(double)>;

/// -d^2/dt'^2 Tr(sigma_t' rho_t) at t' = t by central second difference,
/// checked against Tr[(d sigma)(d rho)] from first differences. Throws
/// NumericalConsistencyError if the two disagree beyond 1e-4 relative.
double q_hs(const DenseFamily& probe, const DenseFamily& ansatz, double theta,
            double h = 1e-4);

/// Single-family form, sigma = rho.
double q_hs(const DenseFamily& family, double theta, double h = 1e-4);

// Closed forms at the matched point.
double q_hs_dephasing(int n, double gamma, double gamma_circuit);
double q_hs_ampdamp_pure(int n, double gamma);
double q_hs_qn_dephasing(int n, double gamma);
double q_hs_qn_ampdamp(int n, double gamma);

enum class BoundKind {
  PureDephasing,
  UnnormDephasing,
  QnDephasing,
  PureAmpDamp,
  QnAmpDamp
};

std::string to_string(BoundKind kind);
BoundKind bound_kind_from_string(const std::string& s);

struct BoundCurve {
  BoundKind kind = BoundKind::PureDephasing;
  std::vector<int> n_grid;
  std::vector<double> values;  // delta-theta lower bounds
  double gamma = 0.0;
  std::int64_t shots = 1;
};

/// delta theta >= 1 / sqrt(2 nu Q_HS) for each n.
BoundCurve crb_curve(BoundKind kind, const std::vector<int>& n_grid,
                     double gamma, std::int64_t shots);

/// e^{-n gamma / 2} / sqrt(D): QN over pure sensitivity for damping.
double qfi_ratio_ampdamp(int n, double gamma);

/// Quadratic small-gamma expansion 1 - n (n + 1) gamma^2 / 8.
double qfi_ratio_ampdamp_expansion(int n, double gamma);

struct ScalingFit {
  double exponent = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

/// Least squares of ln(error) against ln(n).
ScalingFit fit_scaling(const std::vector<double>& errors,
                       const std::vector<int>& n_grid);

/// Piecewise-linear inverse of a monotone learned-vs-true decay curve.
class GammaCalibration {
 public:
  static GammaCalibration fit(std::vector<double> gamma_true,
                              std::vector<double> gamma_hat);

  double apply(double gamma_hat) const;

  const std::vector<double>& knots_hat() const { return hat_; }
  const std::vector<double>& knots_true() const { return true_; }

 private:
  std::vector<double> hat_;
  std::vector<double> true_;
};

}  // namespace vista
