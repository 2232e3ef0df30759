#include "spatialent/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spatialent::quad {

namespace {

constexpr int kLegendreOrder = 20;

}  // namespace

// Newton iteration on the orthonormal Hermite recurrence, with the classic asymptotic
// starting guesses for the largest roots.
GaussHermiteRule gauss_hermite(int n) {
  if (n < 1) throw std::invalid_argument("gauss_hermite: n must be >= 1");
  constexpr double kPiM4 = 0.7511255444649425;  // pi^{-1/4}
  GaussHermiteRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  const int half = (n + 1) / 2;
  double z = 0.0;
  for (int i = 0; i < half; ++i) {
    if (i == 0) {
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -0.16667);
    } else if (i == 1) {
      z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * rule.nodes[0];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * rule.nodes[1];
    } else {
      z = 2.0 * z - rule.nodes[i - 2];
    }
    double derivative = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = kPiM4;
      double p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
      }
      derivative = std::sqrt(2.0 * n) * p2;
      const double previous = z;
      z = previous - p1 / derivative;
      if (std::abs(z - previous) <= 1e-15 * std::max(1.0, std::abs(z))) break;
    }
    rule.nodes[i] = z;
    rule.nodes[n - 1 - i] = -z;
    rule.weights[i] = 2.0 / (derivative * derivative);
    rule.weights[n - 1 - i] = rule.weights[i];
  }
  rule.scaled_weights.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.scaled_weights[i] = rule.weights[i] * std::exp(rule.nodes[i] * rule.nodes[i]);
  }
  return rule;
}

const GaussHermiteRule& default_gauss_hermite() {
  static const GaussHermiteRule rule = gauss_hermite(64);
  return rule;
}

double integrate_gaussian_weighted(const std::function<double(double)>& f, double waist) {
  // x = w t / sqrt(2) maps exp(-2x²/w²) onto exp(-t²)
  const auto& rule = default_gauss_hermite();
  const double scale = waist / std::numbers::sqrt2;
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.scaled_weights[i] * f(scale * rule.nodes[i]);
  }
  return scale * sum;
}

std::complex<double> integrate_gaussian_weighted(
    const std::function<std::complex<double>(double)>& f, double waist) {
  const auto& rule = default_gauss_hermite();
  const double scale = waist / std::numbers::sqrt2;
  std::complex<double> sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.scaled_weights[i] * f(scale * rule.nodes[i]);
  }
  return scale * sum;
}

double integrate_half_line(const std::function<double(double)>& f, double upper) {
  using boost::math::quadrature::gauss_kronrod;
  double error = 0.0;
  return gauss_kronrod<double, 61>::integrate(f, 0.0, upper, 20, 1e-13, &error);
}

std::complex<double> integrate_split_at_origin(
    const std::function<std::complex<double>(double)>& f, double extent) {
  auto part = [&](double sign, bool imaginary) {
    return integrate_half_line(
        [&](double x) {
          const auto v = f(sign * x);
          return imaginary ? v.imag() : v.real();
        },
        extent);
  };
  return {part(1.0, false) + part(-1.0, false), part(1.0, true) + part(-1.0, true)};
}

PanelGrid::PanelGrid(double extent, int panels_per_side)
    : extent_(extent), panels_per_side_(panels_per_side), panel_width_(extent / panels_per_side) {
  if (!(extent > 0.0) || panels_per_side < 1) {
    throw std::invalid_argument("PanelGrid: extent and panel count must be positive");
  }
  using Legendre = boost::math::quadrature::gauss<double, kLegendreOrder>;
  std::vector<std::pair<double, double>> reference;
  const auto& abscissa = Legendre::abscissa();
  const auto& weight = Legendre::weights();
  for (std::size_t k = 0; k < abscissa.size(); ++k) {
    reference.emplace_back(abscissa[k], weight[k]);
    if (abscissa[k] != 0.0) reference.emplace_back(-abscissa[k], weight[k]);
  }
  std::sort(reference.begin(), reference.end());
  for (const auto& [t, w] : reference) reference_nodes_.push_back(t);

  barycentric_.assign(reference_nodes_.size(), 1.0);
  for (std::size_t j = 0; j < reference_nodes_.size(); ++j) {
    for (std::size_t k = 0; k < reference_nodes_.size(); ++k) {
      if (k != j) barycentric_[j] /= (reference_nodes_[j] - reference_nodes_[k]);
    }
  }

  const int panels = 2 * panels_per_side_;
  for (int p = 0; p < panels; ++p) {
    const double left = -extent_ + p * panel_width_;
    const double mid = left + 0.5 * panel_width_;
    for (const auto& [t, w] : reference) {
      nodes_.push_back(mid + 0.5 * panel_width_ * t);
      weights_.push_back(0.5 * panel_width_ * w);
    }
  }
}

std::complex<double> PanelGrid::interpolate(std::span<const std::complex<double>> values,
                                            double x) const {
  if (values.size() != nodes_.size()) {
    throw std::invalid_argument("PanelGrid::interpolate: value count does not match grid");
  }
  if (!(std::abs(x) <= extent_)) return 0.0;
  const int panels = 2 * panels_per_side_;
  const int panel = std::clamp(static_cast<int>(std::floor((x + extent_) / panel_width_)), 0,
                               panels - 1);
  const double mid = -extent_ + (panel + 0.5) * panel_width_;
  const double t = (x - mid) / (0.5 * panel_width_);
  const std::size_t offset = static_cast<std::size_t>(panel) * reference_nodes_.size();

  std::complex<double> numerator = 0.0;
  double denominator = 0.0;
  for (std::size_t j = 0; j < reference_nodes_.size(); ++j) {
    const double diff = t - reference_nodes_[j];
    if (diff == 0.0) return values[offset + j];
    const double c = barycentric_[j] / diff;
    numerator += c * values[offset + j];
    denominator += c;
  }
  return numerator / denominator;
}

}  // namespace spatialent::quad
