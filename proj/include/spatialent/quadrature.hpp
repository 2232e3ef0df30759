#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace spatialent::quad {

/// @brief Nodes and weights of an n-point Gauss-Hermite rule for ∫ e^{-t²} f(t) dt.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  /// weights[i] * exp(nodes[i]^2), for integrands that already carry their Gaussian factor
  std::vector<double> scaled_weights;
};

GaussHermiteRule gauss_hermite(int n);

/// Shared 64-node rule used for all Hermite-Gauss overlaps.
const GaussHermiteRule& default_gauss_hermite();

/// @brief ∫_{-∞}^{∞} f(x) dx for f = (Hermite polynomial) × exp(-2x²/w²), evaluated with the
/// default Gauss-Hermite rule scaled to the waist `w`.
double integrate_gaussian_weighted(const std::function<double(double)>& f, double waist);
std::complex<double> integrate_gaussian_weighted(
    const std::function<std::complex<double>(double)>& f, double waist);

/// @brief Adaptive Gauss-Kronrod integral of f over [0, upper].
double integrate_half_line(const std::function<double(double)>& f, double upper);

/// @brief ∫ f over the real line, split at x = 0 so a jump there does not spoil convergence.
/// `extent` bounds the support (integrand assumed negligible beyond ±extent).
std::complex<double> integrate_split_at_origin(
    const std::function<std::complex<double>(double)>& f, double extent);

/// @brief Composite Gauss-Legendre grid on [-extent, 0] ∪ [0, extent].
///
/// Panels never straddle the origin, so functions with a jump at x = 0 integrate to full
/// accuracy. Used as the sample grid of tabulated mode profiles.
class PanelGrid {
 public:
  PanelGrid(double extent, int panels_per_side);

  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> weights() const { return weights_; }
  double extent() const { return extent_; }

  /// Barycentric interpolation of tabulated `values` (one per node) at x; zero outside the grid.
  std::complex<double> interpolate(std::span<const std::complex<double>> values, double x) const;

 private:
  double extent_;
  int panels_per_side_;
  double panel_width_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  std::vector<double> reference_nodes_;  // on [-1, 1], ascending
  std::vector<double> barycentric_;
};

}  // namespace spatialent::quad
