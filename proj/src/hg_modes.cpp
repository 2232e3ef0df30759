#include "spatialent/hg_modes.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>

#include "spatialent/errors.hpp"

namespace spatialent::modes {

namespace {

// Beyond this many waists every profile we build is below double precision.
constexpr double kSupportInWaists = 16.0;
constexpr double kSampledExtentInWaists = 12.0;
constexpr int kSampledPanelsPerSide = 48;

void require_positive_waist(double waist) {
  if (!(waist > 0.0) || !std::isfinite(waist)) {
    throw std::invalid_argument("waist must be positive and finite, got " + std::to_string(waist));
  }
}

void require_hermite_gauss(const ModeBasis& basis, const char* op) {
  if (basis.kind() != ModeBasis::Kind::HermiteGauss) {
    throw BasisError(std::string(op) + ": requires a Hermite-Gauss basis");
  }
}

bool same_waist(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(a, b); }

std::vector<cplx> project_hermite_gauss(const std::function<cplx(double)>& field,
                                        const ModeBasis& basis) {
  std::vector<cplx> coeffs(basis.size());
  const double waist = basis.waist();
  for (int n = 0; n < basis.size(); ++n) {
    coeffs[n] = quad::integrate_gaussian_weighted(
        [&](double x) { return hg_eval(n, x, waist) * field(x); }, waist);
  }
  return coeffs;
}

ModalCoefficients finish(std::shared_ptr<const ModeBasis> basis, std::vector<cplx> coeffs) {
  ModalCoefficients out{std::move(basis), std::move(coeffs), 0.0};
  out.residual_norm = std::sqrt(std::max(0.0, 1.0 - out.norm_sq()));
  return out;
}

}  // namespace

double hg_eval(int order, double x, double waist) {
  if (order < 0) throw std::invalid_argument("hg_eval: negative mode order");
  require_positive_waist(waist);
  const double xi = std::numbers::sqrt2 * x / waist;
  const double jacobian = std::sqrt(std::numbers::sqrt2 / waist);
  // orthonormal Hermite functions h_n(xi), stable three-term recurrence
  double previous = 0.0;
  double current = std::exp(-0.5 * xi * xi) / std::sqrt(std::sqrt(std::numbers::pi));
  for (int n = 0; n < order; ++n) {
    const double next = std::sqrt(2.0 / (n + 1)) * xi * current -
                        std::sqrt(static_cast<double>(n) / (n + 1)) * previous;
    previous = current;
    current = next;
  }
  return jacobian * current;
}

ModeProfile ModeProfile::hermite_gauss(int order, double waist) {
  if (order < 0) throw std::invalid_argument("ModeProfile: negative mode order");
  require_positive_waist(waist);
  return ModeProfile(Kind::HermiteGauss, order, waist, nullptr);
}

ModeProfile ModeProfile::flipped(double waist) {
  require_positive_waist(waist);
  return ModeProfile(Kind::Flipped, 1, waist, nullptr);
}

ModeProfile ModeProfile::sampled(double waist, std::shared_ptr<const SampledData> data) {
  require_positive_waist(waist);
  if (!data || !data->grid || data->values.size() != data->grid->nodes().size()) {
    throw std::invalid_argument("ModeProfile::sampled: values do not match the grid");
  }
  return ModeProfile(Kind::Sampled, -1, waist, std::move(data));
}

cplx ModeProfile::operator()(double x) const {
  switch (kind_) {
    case Kind::HermiteGauss:
      return hg_eval(order_, x, waist_);
    case Kind::Flipped:
      if (x == 0.0) return 0.0;
      return (x > 0.0 ? 1.0 : -1.0) * hg_eval(0, x, waist_);
    case Kind::Sampled:
      return samples_->grid->interpolate(samples_->values, x);
  }
  return 0.0;
}

cplx overlap(const ModeProfile& f, const ModeProfile& g) {
  if (!same_waist(f.waist(), g.waist())) {
    throw std::invalid_argument("overlap: profiles have different waists");
  }
  using Kind = ModeProfile::Kind;

  if (f.kind() == Kind::Sampled || g.kind() == Kind::Sampled) {
    const SampledData& table = f.kind() == Kind::Sampled ? *f.samples() : *g.samples();
    const auto nodes = table.grid->nodes();
    const auto weights = table.grid->weights();
    auto value_at = [&](const ModeProfile& p, std::size_t i) -> cplx {
      if (p.kind() == Kind::Sampled && p.samples()->grid == table.grid) return p.samples()->values[i];
      return p(nodes[i]);
    };
    cplx sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      sum += weights[i] * std::conj(value_at(f, i)) * value_at(g, i);
    }
    return sum;
  }

  if (f.kind() == Kind::HermiteGauss && g.kind() == Kind::HermiteGauss) {
    const int m = f.order();
    const int n = g.order();
    const double w = f.waist();
    const std::function<double(double)> integrand = [&](double x) {
      return hg_eval(m, x, w) * hg_eval(n, x, w);
    };
    return quad::integrate_gaussian_weighted(integrand, w);
  }

  return quad::integrate_split_at_origin([&](double x) { return std::conj(f(x)) * g(x); },
                                         kSupportInWaists * f.waist());
}

std::shared_ptr<const ModeBasis> ModeBasis::hermite_gauss(int truncation, double waist) {
  if (truncation < 2) throw std::invalid_argument("ModeBasis: truncation must be >= 2");
  require_positive_waist(waist);
  std::vector<ModeProfile> profiles;
  profiles.reserve(truncation);
  for (int n = 0; n < truncation; ++n) profiles.push_back(ModeProfile::hermite_gauss(n, waist));
  return std::shared_ptr<const ModeBasis>(new ModeBasis(Kind::HermiteGauss, waist, std::move(profiles)));
}

std::shared_ptr<const ModeBasis> ModeBasis::flipped(int truncation, double waist) {
  if (truncation < 2) throw std::invalid_argument("ModeBasis: truncation must be >= 2");
  require_positive_waist(waist);

  std::vector<ModeProfile> profiles{ModeProfile::hermite_gauss(0, waist),
                                    ModeProfile::flipped(waist)};
  if (truncation == 2) {
    return std::shared_ptr<const ModeBasis>(new ModeBasis(Kind::Flipped, waist, std::move(profiles)));
  }

  auto grid = std::make_shared<const quad::PanelGrid>(kSampledExtentInWaists * waist,
                                                      kSampledPanelsPerSide);
  const auto nodes = grid->nodes();
  const auto weights = grid->weights();
  auto tabulate = [&](const ModeProfile& p) {
    std::vector<cplx> v(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) v[i] = p(nodes[i]);
    return v;
  };
  auto inner = [&](const std::vector<cplx>& a, const std::vector<cplx>& b) {
    cplx sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += weights[i] * std::conj(a[i]) * b[i];
    return sum;
  };

  std::vector<std::vector<cplx>> orthonormal{tabulate(profiles[0]), tabulate(profiles[1])};
  for (int order = 1; static_cast<int>(profiles.size()) < truncation; ++order) {
    auto candidate = tabulate(ModeProfile::hermite_gauss(order, waist));
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& e : orthonormal) {
        const cplx c = inner(e, candidate);
        for (std::size_t i = 0; i < candidate.size(); ++i) candidate[i] -= c * e[i];
      }
    }
    const double norm = std::sqrt(inner(candidate, candidate).real());
    if (norm < 1e-6) continue;
    for (auto& v : candidate) v /= norm;
    orthonormal.push_back(candidate);
    profiles.push_back(
        ModeProfile::sampled(waist, std::make_shared<const SampledData>(SampledData{grid, candidate})));
  }
  return std::shared_ptr<const ModeBasis>(new ModeBasis(Kind::Flipped, waist, std::move(profiles)));
}

Eigen::MatrixXcd ModeBasis::gram_matrix() const {
  const int m = size();
  Eigen::MatrixXcd gram(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      gram(i, j) = overlap(profiles_[i], profiles_[j]);
      gram(j, i) = std::conj(gram(i, j));
    }
  }
  return gram;
}

double ModalCoefficients::norm_sq() const {
  double sum = 0.0;
  for (const auto& c : coeffs) sum += std::norm(c);
  return sum;
}

ModalCoefficients decompose(const ModeProfile& field, std::shared_ptr<const ModeBasis> basis) {
  std::vector<cplx> coeffs(basis->size());
  for (int n = 0; n < basis->size(); ++n) coeffs[n] = overlap(basis->profile(n), field);
  return finish(std::move(basis), std::move(coeffs));
}

ModalCoefficients basis_mode(std::shared_ptr<const ModeBasis> basis, int n) {
  if (n < 0 || n >= basis->size()) throw std::out_of_range("basis_mode: mode index out of range");
  std::vector<cplx> coeffs(basis->size(), 0.0);
  coeffs[n] = 1.0;
  return ModalCoefficients{std::move(basis), std::move(coeffs), 0.0};
}

ModalCoefficients decompose_shifted_tem00(double displacement, double momentum,
                                          std::shared_ptr<const ModeBasis> basis) {
  require_hermite_gauss(*basis, "decompose_shifted_tem00");
  const double waist = basis->waist();
  auto coeffs = project_hermite_gauss(
      [&](double x) { return std::polar(hg_eval(0, x - displacement, waist), momentum * x); },
      *basis);
  return finish(std::move(basis), std::move(coeffs));
}

ModalCoefficients decompose_displaced_tem00(double displacement,
                                            std::shared_ptr<const ModeBasis> basis) {
  return decompose_shifted_tem00(displacement, 0.0, std::move(basis));
}

ModalCoefficients decompose_tilted_tem00(double momentum, std::shared_ptr<const ModeBasis> basis) {
  return decompose_shifted_tem00(0.0, momentum, std::move(basis));
}

ModalCoefficients flipped_mode_coeffs(std::shared_ptr<const ModeBasis> basis) {
  require_hermite_gauss(*basis, "flipped_mode_coeffs");
  std::vector<cplx> coeffs(basis->size(), 0.0);
  for (int n = 1; n < basis->size(); n += 2) {
    // odd integrand: fold onto the half line
    const double w = basis->waist();
    coeffs[n] = 2.0 * quad::integrate_half_line(
                          [&](double x) { return hg_eval(n, x, w) * hg_eval(0, x, w); },
                          kSupportInWaists * w);
  }
  return finish(std::move(basis), std::move(coeffs));
}

ModalCoefficients farfield(const ModalCoefficients& near) {
  require_hermite_gauss(*near.basis, "farfield");
  static constexpr cplx kGouy[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  ModalCoefficients far = near;
  for (std::size_t n = 0; n < far.coeffs.size(); ++n) far.coeffs[n] *= kGouy[n % 4];
  return far;
}

Eigen::MatrixXcd farfield_unitary(int truncation) {
  static constexpr cplx kGouy[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(truncation, truncation);
  for (int n = 0; n < truncation; ++n) u(n, n) = kGouy[n % 4];
  return u;
}

}  // namespace spatialent::modes
