// Copyright 2026 The glottkit Authors
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

#include "glottkit/lpc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "glottkit/error.hpp"

namespace glottkit {
namespace {

using cd = std::complex<double>;

cd eval_monic(const std::vector<double>& c, cd z) {
  // c = [1, c1, ..., cN] as z^N + c1 z^{N-1} + ... + cN
  cd acc = 1.0;
  for (std::size_t i = 1; i < c.size(); ++i) acc = acc * z + c[i];
  return acc;
}

cd eval_monic_derivative(const std::vector<double>& c, cd z) {
  const std::size_t n = c.size() - 1;
  cd acc = static_cast<double>(n);
  for (std::size_t i = 1; i < n; ++i) acc = acc * z + static_cast<double>(n - i) * c[i];
  return acc;
}

cd newton_polish(const std::vector<double>& c, cd z, int iterations = 4) {
  cd best = z;
  double best_res = std::abs(eval_monic(c, z));
  for (int it = 0; it < iterations && best_res > 0.0; ++it) {
    const cd d = eval_monic_derivative(c, best);
    if (std::abs(d) == 0.0) break;
    const cd next = best - eval_monic(c, best) / d;
    const double res = std::abs(eval_monic(c, next));
    if (!(res < best_res)) break;
    best = next;
    best_res = res;
  }
  return best;
}

double real_cubic_root(double c1, double c2, double c3) {
  const double p = c2 - c1 * c1 / 3.0;
  const double q = 2.0 * c1 * c1 * c1 / 27.0 - c1 * c2 / 3.0 + c3;
  const double disc = q * q / 4.0 + p * p * p / 27.0;
  double t = 0.0;
  if (disc > 0.0) {
    const double s = std::sqrt(disc);
    const double u = std::cbrt(-q / 2.0 - std::copysign(s, q));
    t = (u != 0.0) ? u - p / (3.0 * u) : 0.0;
  } else if (p < 0.0) {
    const double m = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
    const double theta = std::acos(arg) / 3.0;
    double best = 0.0;
    for (int k = 0; k < 3; ++k) {
      const double tk = m * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0);
      if (std::abs(tk - c1 / 3.0) > std::abs(best - c1 / 3.0) || k == 0) best = tk;
    }
    t = best;
  }
  return t - c1 / 3.0;
}

std::vector<cd> quadratic_roots(double b, double c) {
  // z^2 + b z + c
  const double disc = b * b - 4.0 * c;
  if (disc < 0.0) {
    const cd r(-b / 2.0, std::sqrt(-disc) / 2.0);
    return {r, std::conj(r)};
  }
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  if (q == 0.0) return {0.0, 0.0};
  return {q, c / q};
}

std::vector<cd> roots_of(const PolynomialFilter& p) {
  const auto& c = p.coefficients();
  switch (p.order()) {
    case 0:
      return {};
    case 1:
      return {-c[1]};
    case 2:
      return quadratic_roots(c[1], c[2]);
    case 3:
      return cubic_roots(p).poles;
    default:
      break;
  }
  const Eigen::Index n = static_cast<Eigen::Index>(p.order());
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) companion(0, j) = -c[static_cast<std::size_t>(j) + 1];
  for (Eigen::Index i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  if (solver.info() != Eigen::Success) throw NumericalFailure("companion eigensolver failed");
  std::vector<cd> out;
  for (Eigen::Index i = 0; i < n; ++i) out.push_back(solver.eigenvalues()[i]);
  return out;
}

}  // namespace

std::vector<double> autocorrelate(std::span<const double> x, std::size_t max_lag) {
  if (max_lag >= x.size()) {
    throw InvalidArgument("autocorrelation lag " + std::to_string(max_lag) +
                          " requires more than " + std::to_string(x.size()) + " samples");
  }
  std::vector<double> r(max_lag + 1, 0.0);
  for (std::size_t k = 0; k <= max_lag; ++k) {
    double acc = 0.0;
    for (std::size_t n = 0; n + k < x.size(); ++n) acc += x[n] * x[n + k];
    r[k] = acc;
  }
  if (!std::isfinite(r[0])) throw InvalidArgument("autocorrelation of non-finite signal");
  if (r[0] == 0.0) throw DegenerateFrame("all-zero frame");
  return r;
}

LpcModel levinson_durbin(std::span<const double> r, std::size_t order) {
  if (order < 1) throw InvalidArgument("LPC order must be >= 1");
  if (r.size() <= order) throw InvalidArgument("autocorrelation shorter than LPC order + 1");
  for (std::size_t i = 0; i <= order; ++i) {
    if (!std::isfinite(r[i])) throw InvalidArgument("non-finite autocorrelation");
  }
  if (!(r[0] > 0.0)) throw DegenerateFrame("zero-energy frame (r[0] == 0)");

  std::vector<double> a(order + 1, 0.0);
  a[0] = 1.0;
  std::vector<double> prev(order + 1, 0.0);
  std::vector<double> reflection;
  reflection.reserve(order);
  double err = r[0];
  for (std::size_t i = 1; i <= order; ++i) {
    double acc = r[i];
    for (std::size_t j = 1; j < i; ++j) acc += a[j] * r[i - j];
    const double k = err > 0.0 ? -acc / err : 0.0;
    if (std::abs(k) > 1.0 + 1e-12) {
      throw NumericalFailure("reflection coefficient outside [-1, 1]: not an autocorrelation");
    }
    prev = a;
    for (std::size_t j = 1; j < i; ++j) a[j] = prev[j] + k * prev[i - j];
    a[i] = k;
    reflection.push_back(k);
    err = std::max(0.0, err * (1.0 - k * k));
  }
  LpcModel m;
  m.polynomial = PolynomialFilter(std::move(a));
  m.gain = std::sqrt(err);
  m.reflection = std::move(reflection);
  return m;
}

LpcModel lpc_analyze(std::span<const double> x, std::size_t order) {
  auto r = autocorrelate(x, order);
  r[0] *= 1.0 + kLpcNoiseFloor;
  return stabilize(levinson_durbin(r, order));
}

LpcModel stabilize(const LpcModel& model) {
  if (is_stable(model.polynomial)) return model;
  auto roots = roots_of(model.polynomial);
  double gain = model.gain;
  for (auto& z : roots) {
    double mag = std::abs(z);
    if (mag >= 1.0) {
      gain /= mag;
      z = 1.0 / std::conj(z);
      mag = 1.0 / mag;
    }
    if (mag > kMaxPoleRadius) z *= kMaxPoleRadius / mag;
  }
  LpcModel out;
  out.polynomial = polynomial_from_poles(PoleSet{std::move(roots)});
  out.gain = gain;
  return out;
}

PoleSet cubic_roots(const PolynomialFilter& polynomial) {
  if (polynomial.order() != 3) throw InvalidArgument("cubic_roots needs a degree-3 polynomial");
  const auto& c = polynomial.coefficients();
  double r = real_cubic_root(c[1], c[2], c[3]);
  r = newton_polish(c, cd(r, 0.0)).real();
  const double b = c[1] + r;
  const double q = c[2] + r * b;
  auto quad = quadratic_roots(b, q);
  PoleSet out;
  out.poles.push_back(r);
  if (quad[0].imag() != 0.0) {
    cd upper = quad[0].imag() > 0.0 ? quad[0] : quad[1];
    upper = newton_polish(c, upper);
    if (upper.imag() == 0.0) {
      out.poles.push_back(upper);
      out.poles.push_back(upper);
    } else {
      out.poles.push_back(upper);
      out.poles.push_back(std::conj(upper));
    }
  } else {
    out.poles.push_back(newton_polish(c, cd(quad[0].real(), 0.0)).real());
    out.poles.push_back(newton_polish(c, cd(quad[1].real(), 0.0)).real());
  }
  return out;
}

PolynomialFilter polynomial_from_poles(const PoleSet& poles) {
  std::vector<cd> acc{1.0};
  for (const auto& p : poles.poles) {
    std::vector<cd> next(acc.size() + 1, 0.0);
    for (std::size_t i = 0; i < acc.size(); ++i) {
      next[i] += acc[i];
      next[i + 1] -= p * acc[i];
    }
    acc = std::move(next);
  }
  std::vector<double> coeffs(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) {
    if (std::abs(acc[i].imag()) > 1e-9 * (1.0 + std::abs(acc[i].real()))) {
      throw InvalidArgument("pole set is not closed under conjugation");
    }
    coeffs[i] = acc[i].real();
  }
  coeffs[0] = 1.0;
  return PolynomialFilter(std::move(coeffs), FilterRole::kAllPole);
}

std::complex<double> evaluate_on_unit_circle(const PolynomialFilter& p, double omega) {
  const auto& c = p.coefficients();
  cd acc = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    acc += c[k] * std::polar(1.0, -omega * static_cast<double>(k));
  }
  return acc;
}

MagnitudeResponse frequency_response(const LpcModel& model, std::size_t n_points,
                                     double sample_rate) {
  if (n_points < 2) throw InvalidArgument("frequency_response needs at least 2 points");
  if (!(sample_rate > 0.0)) throw InvalidArgument("sample rate must be positive");
  MagnitudeResponse out;
  out.frequencies_hz.resize(n_points);
  out.magnitude_db.resize(n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    const double frac = static_cast<double>(i) / static_cast<double>(n_points - 1);
    const double omega = std::numbers::pi * frac;
    out.frequencies_hz[i] = 0.5 * sample_rate * frac;
    const double mag = std::abs(evaluate_on_unit_circle(model.polynomial, omega));
    out.magnitude_db[i] = 20.0 * std::log10(model.gain / mag);
  }
  return out;
}

}  // namespace glottkit
