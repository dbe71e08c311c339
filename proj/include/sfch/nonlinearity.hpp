#pragma once

#include <span>
#include <variant>

#include "sfch/field.hpp"
#include "sfch/spectral.hpp"

namespace sfch {

/// Shock-filter drive sqrt(|grad u|^2 + delta^2) * arctan(lap u).
struct ShockFilter {
  double delta = 0.0;
};

/// Classical double well H(u) = u^2 (1-u)^2 with wells at 0 and 1.
struct DoubleWell {};

using NonlinearVariant = std::variant<ShockFilter, DoubleWell>;

/// Throws InvalidArgument when a ShockFilter carries a negative or non-finite delta.
void validate(const NonlinearVariant& variant);

const char* variant_name(const NonlinearVariant& variant) noexcept;

// Scalar double-well pieces.
double double_well_potential(double u) noexcept;   // H(u)
double double_well_derivative(double u) noexcept;  // H'(u) = 2u(1-u)(1-2u)
double double_well_curvature(double u) noexcept;   // H''(u)

/// sqrt(|grad u|^2 + delta^2) * arctan(lap u) with spectral derivatives.
Field2D shock_term(const Field2D& u, const SpectralWorkspace& ws, double delta);

/// Same as shock_term, starting from the forward transform of u.
Field2D shock_term_from_spectrum(std::span<const Complex> u_hat, const SpectralWorkspace& ws,
                                 double delta);

/// H'(u) pointwise.
Field2D double_well_term(const Field2D& u);

/// The variant's drive term h(u).
Field2D nonlinear_term(const Field2D& u, const SpectralWorkspace& ws,
                       const NonlinearVariant& variant);

}  // namespace sfch
