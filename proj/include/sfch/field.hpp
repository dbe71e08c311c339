#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace sfch {

/// Real scalar field sampled on a uniform periodic width x height grid.
///
/// Samples are stored row-major (index = y * width + x). The grid step
/// `spacing` is carried along so that spectral wavenumbers and quadratures
/// come out in the same units. Every constructor rejects non-finite data.
class Field2D {
 public:
  Field2D(int width, int height, double spacing = 1.0);
  Field2D(int width, int height, std::vector<double> data, double spacing = 1.0);

  /// Constant field.
  static Field2D filled(int width, int height, double value, double spacing = 1.0);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }
  double spacing() const noexcept { return spacing_; }

  double operator()(int x, int y) const { return data_[index(x, y)]; }
  double& operator()(int x, int y) { return data_[index(x, y)]; }
  double operator[](std::size_t i) const { return data_[i]; }
  double& operator[](std::size_t i) { return data_[i]; }

  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }

  bool same_grid(const Field2D& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_;
  }
  bool all_finite() const noexcept;

  /// Discrete L2 norm, sqrt(h^2 * sum u^2).
  double l2_norm() const noexcept;
  double max_abs() const noexcept;

  friend bool operator==(const Field2D&, const Field2D&) = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_;
  int height_;
  double spacing_;
  std::vector<double> data_;
};

/// Boolean per-pixel selector; `inside` marks the inpainting domain.
class Mask2D {
 public:
  Mask2D(int width, int height, bool value = false);
  Mask2D(int width, int height, std::vector<std::uint8_t> inside);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return inside_.size(); }

  bool inside(int x, int y) const { return inside_[index(x, y)] != 0; }
  bool inside(std::size_t i) const { return inside_[i] != 0; }
  void set(int x, int y, bool value) { inside_[index(x, y)] = value ? 1 : 0; }

  std::size_t count_inside() const noexcept;

  bool matches(const Field2D& f) const noexcept {
    return width_ == f.width() && height_ == f.height();
  }

  friend bool operator==(const Mask2D&, const Mask2D&) = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_;
  int height_;
  std::vector<std::uint8_t> inside_;
};

/// Original image, damaged region and fidelity weight.
///
/// u0 must lie in [0,1] and share the mask's grid. lambda0 may be zero,
/// which turns the fidelity term off (pure Cahn-Hilliard flow).
class InpaintProblem {
 public:
  InpaintProblem(Field2D u0, Mask2D mask, double lambda0);

  const Field2D& u0() const noexcept { return u0_; }
  const Mask2D& mask() const noexcept { return mask_; }
  double lambda0() const noexcept { return lambda0_; }

 private:
  Field2D u0_;
  Mask2D mask_;
  double lambda0_;
};

/// lambda(x) = lambda0 on the known pixels, 0 inside the damaged region.
Field2D build_lambda_field(const InpaintProblem& problem);

/// Copy of `image` with every pixel of the damaged region set to `fill`.
Field2D apply_damage(const Field2D& image, const Mask2D& mask, double fill = 0.5);

enum class Region { All, Inside, Outside };

/// Mean squared difference over every pixel.
double mse(const Field2D& a, const Field2D& b);

/// Mean squared difference over the pixels of `region` relative to `mask`.
/// An empty selection yields 0.
double mse(const Field2D& a, const Field2D& b, const Mask2D& mask, Region region);

// Synthetic binary test images. All outputs take values in {0,1}.

/// Vertical stripes: column x is white when (x mod period) < period/2.
Field2D generate_stripes(int width, int height, int stripe_period);

/// White cross of the given arm thickness centred on a black background.
Field2D generate_cross(int width, int height, int arm_thickness);

/// Axis-aligned rectangle [x0, x0+w) x [y0, y0+h).
Mask2D generate_mask_rect(int width, int height, int x0, int y0, int w, int h);

/// Filled flat-top regular hexagon with circumradius `radius` around pixel
/// (cx, cy). Pixels on the boundary are inside; radius 0 selects the centre.
Mask2D generate_mask_hexagon(int width, int height, int cx, int cy, double radius);

}  // namespace sfch
