#include "sfch/nonlinearity.hpp"

#include <cmath>
#include <vector>

#include "sfch/error.hpp"

namespace sfch {

void validate(const NonlinearVariant& variant) {
  if (const auto* shock = std::get_if<ShockFilter>(&variant)) {
    if (!(shock->delta >= 0.0) || !std::isfinite(shock->delta)) {
      throw InvalidArgument("shock filter delta must be finite and nonnegative");
    }
  }
}

const char* variant_name(const NonlinearVariant& variant) noexcept {
  return std::holds_alternative<ShockFilter>(variant) ? "shock" : "doublewell";
}

double double_well_potential(double u) noexcept {
  const double v = u * (1.0 - u);
  return v * v;
}

double double_well_derivative(double u) noexcept {
  return 2.0 * u * (1.0 - u) * (1.0 - 2.0 * u);
}

double double_well_curvature(double u) noexcept { return 2.0 - 12.0 * u + 12.0 * u * u; }

Field2D shock_term_from_spectrum(std::span<const Complex> u_hat, const SpectralWorkspace& ws,
                                 double delta) {
  if (u_hat.size() != ws.size()) {
    throw DimensionError("spectrum does not match the workspace grid");
  }
  const int w = ws.width();
  const int h = ws.height();
  const auto kx = ws.kx_derivative();
  const auto ky = ws.ky_derivative();
  const auto lap = ws.lap_symbol();

  std::vector<Complex> grad(u_hat.size());
  std::vector<Complex> lap_u(u_hat.begin(), u_hat.end());
  for (int l = 0; l < h; ++l) {
    for (int k = 0; k < w; ++k) {
      const std::size_t i = static_cast<std::size_t>(l) * static_cast<std::size_t>(w) +
                            static_cast<std::size_t>(k);
      const Complex dx = Complex(0.0, kx[static_cast<std::size_t>(k)]) * u_hat[i];
      const Complex dy = Complex(0.0, ky[static_cast<std::size_t>(l)]) * u_hat[i];
      grad[i] = dx + Complex(0.0, 1.0) * dy;
      lap_u[i] *= lap[i];
    }
  }
  ws.backward_in_place(grad);
  ws.backward_in_place(lap_u);

  const double norm = 1.0 / static_cast<double>(u_hat.size());
  const double delta2 = delta * delta;
  Field2D out(w, h, ws.spacing());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double ux = grad[i].real() * norm;
    const double uy = grad[i].imag() * norm;
    const double lu = lap_u[i].real() * norm;
    out[i] = std::sqrt(ux * ux + uy * uy + delta2) * std::atan(lu);
  }
  return out;
}

Field2D shock_term(const Field2D& u, const SpectralWorkspace& ws, double delta) {
  if (!(delta >= 0.0)) throw InvalidArgument("shock filter delta must be nonnegative");
  const Spectrum u_hat = ws.forward(u);
  return shock_term_from_spectrum(u_hat.modes(), ws, delta);
}

Field2D double_well_term(const Field2D& u) {
  Field2D out(u.width(), u.height(), u.spacing());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = double_well_derivative(u[i]);
  return out;
}

Field2D nonlinear_term(const Field2D& u, const SpectralWorkspace& ws,
                       const NonlinearVariant& variant) {
  if (const auto* shock = std::get_if<ShockFilter>(&variant)) {
    return shock_term(u, ws, shock->delta);
  }
  return double_well_term(u);
}

}  // namespace sfch
