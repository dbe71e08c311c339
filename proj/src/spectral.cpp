#include "sfch/spectral.hpp"

#include <fftw3.h>

#include <cassert>
#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include "sfch/error.hpp"

namespace sfch {

namespace {

// The FFTW planner is not reentrant; execution with the new-array interface is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(std::span<Complex> buffer) {
  return reinterpret_cast<fftw_complex*>(buffer.data());
}

std::vector<double> axis_wavenumbers(int n, double spacing) {
  std::vector<double> kappa(static_cast<std::size_t>(n));
  const double scale = 2.0 * std::numbers::pi / (n * spacing);
  for (int i = 0; i < n; ++i) kappa[static_cast<std::size_t>(i)] = scale * signed_frequency(i, n);
  return kappa;
}

std::vector<double> without_nyquist(std::vector<double> kappa) {
  const std::size_t n = kappa.size();
  if (n % 2 == 0) kappa[n / 2] = 0.0;
  return kappa;
}

void check_grid(const SpectralWorkspace& ws, const Field2D& f) {
  if (!ws.matches(f)) {
    throw DimensionError("field is " + std::to_string(f.width()) + "x" +
                         std::to_string(f.height()) + " but workspace is " +
                         std::to_string(ws.width()) + "x" + std::to_string(ws.height()));
  }
}

std::vector<Complex> load_real(const Field2D& f) {
  std::vector<Complex> buf(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) buf[i] = Complex(f[i], 0.0);
  return buf;
}

// Normalised inverse of `buf`; returns the real part. The imaginary part must be
// rounding noise because callers only pass conjugate-symmetric spectra.
Field2D real_inverse(const SpectralWorkspace& ws, std::vector<Complex>& buf) {
  ws.backward_in_place(buf);
  const double norm = 1.0 / static_cast<double>(buf.size());
  Field2D out(ws.width(), ws.height(), ws.spacing());
  [[maybe_unused]] double max_imag = 0.0;
  [[maybe_unused]] double max_real = 0.0;
  for (std::size_t i = 0; i < buf.size(); ++i) {
    out[i] = buf[i].real() * norm;
#ifndef NDEBUG
    max_imag = std::max(max_imag, std::abs(buf[i].imag() * norm));
    max_real = std::max(max_real, std::abs(out[i]));
#endif
  }
  assert(max_imag <= 1e-10 * std::max(1.0, max_real));
  return out;
}

}  // namespace

int signed_frequency(int i, int n) noexcept { return 2 * i <= n ? i : i - n; }

struct SpectralWorkspace::Plans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;

  Plans(int width, int height) {
    std::vector<Complex> probe(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
    std::lock_guard lock(planner_mutex());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    forward = fftw_plan_dft_2d(height, width, as_fftw(probe), as_fftw(probe), FFTW_FORWARD, flags);
    backward =
        fftw_plan_dft_2d(height, width, as_fftw(probe), as_fftw(probe), FFTW_BACKWARD, flags);
    if (forward == nullptr || backward == nullptr) {
      throw Error("FFTW could not create a plan for a " + std::to_string(width) + "x" +
                  std::to_string(height) + " grid");
    }
  }

  ~Plans() {
    std::lock_guard lock(planner_mutex());
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
  }

  Plans(const Plans&) = delete;
  Plans& operator=(const Plans&) = delete;
};

SpectralWorkspace::SpectralWorkspace(int width, int height, double spacing)
    : width_(width), height_(height), spacing_(spacing) {
  if (width < 2 || height < 2) {
    throw InvalidArgument("spectral grid must be at least 2x2");
  }
  if (!(spacing > 0.0) || !std::isfinite(spacing)) {
    throw InvalidArgument("grid spacing must be positive");
  }
  kx_ = axis_wavenumbers(width, spacing);
  ky_ = axis_wavenumbers(height, spacing);
  kx_deriv_ = without_nyquist(kx_);
  ky_deriv_ = without_nyquist(ky_);

  lap_.resize(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
  bilap_.resize(lap_.size());
  for (int l = 0; l < height; ++l) {
    for (int k = 0; k < width; ++k) {
      const std::size_t i = static_cast<std::size_t>(l) * static_cast<std::size_t>(width) +
                            static_cast<std::size_t>(k);
      const double kxv = kx_[static_cast<std::size_t>(k)];
      const double kyv = ky_[static_cast<std::size_t>(l)];
      lap_[i] = -(kxv * kxv + kyv * kyv);
      bilap_[i] = lap_[i] * lap_[i];
    }
  }
  plans_ = std::make_shared<const Plans>(width, height);
}

void SpectralWorkspace::forward_in_place(std::span<Complex> buffer) const {
  if (buffer.size() != size()) throw DimensionError("transform buffer has the wrong size");
  fftw_execute_dft(plans_->forward, as_fftw(buffer), as_fftw(buffer));
}

void SpectralWorkspace::backward_in_place(std::span<Complex> buffer) const {
  if (buffer.size() != size()) throw DimensionError("transform buffer has the wrong size");
  fftw_execute_dft(plans_->backward, as_fftw(buffer), as_fftw(buffer));
}

Spectrum SpectralWorkspace::forward(const Field2D& field) const {
  check_grid(*this, field);
  Spectrum s(width_, height_);
  for (std::size_t i = 0; i < field.size(); ++i) s[i] = Complex(field[i], 0.0);
  forward_in_place(s.modes());
  return s;
}

Field2D SpectralWorkspace::inverse(const Spectrum& spectrum) const {
  if (spectrum.width() != width_ || spectrum.height() != height_) {
    throw DimensionError("spectrum does not match the workspace grid");
  }
  std::vector<Complex> buf(spectrum.modes().begin(), spectrum.modes().end());
  backward_in_place(buf);
  const double norm = 1.0 / static_cast<double>(buf.size());
  Field2D out(width_, height_, spacing_);
  for (std::size_t i = 0; i < buf.size(); ++i) out[i] = buf[i].real() * norm;
  return out;
}

Field2D laplacian(const Field2D& field, const SpectralWorkspace& ws) {
  check_grid(ws, field);
  std::vector<Complex> buf = load_real(field);
  ws.forward_in_place(buf);
  const auto lap = ws.lap_symbol();
  for (std::size_t i = 0; i < buf.size(); ++i) buf[i] *= lap[i];
  return real_inverse(ws, buf);
}

Field2D bilaplacian(const Field2D& field, const SpectralWorkspace& ws) {
  check_grid(ws, field);
  std::vector<Complex> buf = load_real(field);
  ws.forward_in_place(buf);
  const auto bilap = ws.bilap_symbol();
  for (std::size_t i = 0; i < buf.size(); ++i) buf[i] *= bilap[i];
  return real_inverse(ws, buf);
}

Gradient gradient(const Field2D& field, const SpectralWorkspace& ws) {
  check_grid(ws, field);
  std::vector<Complex> buf = load_real(field);
  ws.forward_in_place(buf);
  const auto kx = ws.kx_derivative();
  const auto ky = ws.ky_derivative();
  // Both derivative spectra are conjugate symmetric, so pack d/dx + i d/dy
  // into one inverse transform.
  const int w = ws.width();
  const int h = ws.height();
  for (int l = 0; l < h; ++l) {
    for (int k = 0; k < w; ++k) {
      const std::size_t i = static_cast<std::size_t>(l) * static_cast<std::size_t>(w) +
                            static_cast<std::size_t>(k);
      const Complex u = buf[i];
      const Complex dx = Complex(0.0, kx[static_cast<std::size_t>(k)]) * u;
      const Complex dy = Complex(0.0, ky[static_cast<std::size_t>(l)]) * u;
      buf[i] = dx + Complex(0.0, 1.0) * dy;
    }
  }
  ws.backward_in_place(buf);
  const double norm = 1.0 / static_cast<double>(buf.size());
  Gradient g{Field2D(w, h, ws.spacing()), Field2D(w, h, ws.spacing())};
  for (std::size_t i = 0; i < buf.size(); ++i) {
    g.dx[i] = buf[i].real() * norm;
    g.dy[i] = buf[i].imag() * norm;
  }
  return g;
}

}  // namespace sfch
