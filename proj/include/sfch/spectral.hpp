#pragma once

#include <complex>
#include <memory>
#include <span>
#include <vector>

#include "sfch/field.hpp"

namespace sfch {

using Complex = std::complex<double>;

/// Full (non-halved) W x H discrete Fourier spectrum, row-major like Field2D.
/// Mode (k, l) holds column frequency k and row frequency l, both in [0, N).
class Spectrum {
 public:
  Spectrum(int width, int height) : width_(width), height_(height), modes_(
      static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {}

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return modes_.size(); }

  Complex operator()(int k, int l) const { return modes_[index(k, l)]; }
  Complex& operator()(int k, int l) { return modes_[index(k, l)]; }
  Complex operator[](std::size_t i) const { return modes_[i]; }
  Complex& operator[](std::size_t i) { return modes_[i]; }

  std::span<const Complex> modes() const noexcept { return modes_; }
  std::span<Complex> modes() noexcept { return modes_; }

 private:
  std::size_t index(int k, int l) const noexcept {
    return static_cast<std::size_t>(l) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(k);
  }

  int width_;
  int height_;
  std::vector<Complex> modes_;
};

/// Signed frequency of index i on an N-point axis, in (-N/2, N/2].
int signed_frequency(int i, int n) noexcept;

/// Wavenumbers, Laplacian symbol and transform plans for one grid size.
///
/// Conventions: forward is the unnormalised DFT with kernel exp(-2 pi i k x / N);
/// inverse carries the 1/(W H) factor. Angular wavenumbers are
/// kappa = 2 pi f / (N h) with f the signed frequency, and the Laplacian symbol is
/// the exact continuous one, K = -(kappa_x^2 + kappa_y^2), so K <= 0 everywhere.
///
/// First derivatives use `kx_derivative()` / `ky_derivative()`, which equal
/// kx / ky except that the Nyquist entry of an even axis is zero; an odd
/// derivative of the unpaired Nyquist mode has no real representation.
///
/// Immutable after construction and safe to use from several threads.
class SpectralWorkspace {
 public:
  SpectralWorkspace(int width, int height, double spacing = 1.0);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  double spacing() const noexcept { return spacing_; }
  std::size_t size() const noexcept { return lap_.size(); }

  std::span<const double> kx() const noexcept { return kx_; }
  std::span<const double> ky() const noexcept { return ky_; }
  std::span<const double> kx_derivative() const noexcept { return kx_deriv_; }
  std::span<const double> ky_derivative() const noexcept { return ky_deriv_; }
  std::span<const double> lap_symbol() const noexcept { return lap_; }
  std::span<const double> bilap_symbol() const noexcept { return bilap_; }

  bool matches(const Field2D& f) const noexcept {
    return f.width() == width_ && f.height() == height_;
  }

  Spectrum forward(const Field2D& field) const;
  /// Real part of the normalised inverse transform.
  Field2D inverse(const Spectrum& spectrum) const;

  // In-place transforms on a raw row-major buffer of size() modes.
  // backward_in_place does not apply the 1/(W H) factor.
  void forward_in_place(std::span<Complex> buffer) const;
  void backward_in_place(std::span<Complex> buffer) const;

 private:
  struct Plans;

  int width_;
  int height_;
  double spacing_;
  std::vector<double> kx_, ky_;
  std::vector<double> kx_deriv_, ky_deriv_;
  std::vector<double> lap_, bilap_;
  std::shared_ptr<const Plans> plans_;
};

struct Gradient {
  Field2D dx;
  Field2D dy;
};

Field2D laplacian(const Field2D& field, const SpectralWorkspace& ws);
Field2D bilaplacian(const Field2D& field, const SpectralWorkspace& ws);
Gradient gradient(const Field2D& field, const SpectralWorkspace& ws);

}  // namespace sfch
