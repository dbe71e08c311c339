#include "sfch/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sfch/error.hpp"

namespace sfch {

namespace {

void check_dims(int width, int height) {
  if (width <= 0 || height <= 0) {
    throw InvalidArgument("grid dimensions must be positive, got " + std::to_string(width) +
                          "x" + std::to_string(height));
  }
}

std::size_t cell_count(int width, int height) {
  return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
}

}  // namespace

Field2D::Field2D(int width, int height, double spacing)
    : width_(width), height_(height), spacing_(spacing) {
  check_dims(width, height);
  if (!(spacing > 0.0) || !std::isfinite(spacing)) {
    throw InvalidArgument("grid spacing must be positive");
  }
  data_.assign(cell_count(width, height), 0.0);
}

Field2D::Field2D(int width, int height, std::vector<double> data, double spacing)
    : Field2D(width, height, spacing) {
  if (data.size() != data_.size()) {
    throw DimensionError("field data has " + std::to_string(data.size()) +
                         " samples, expected " + std::to_string(data_.size()));
  }
  data_ = std::move(data);
  if (!all_finite()) {
    throw InvalidArgument("field data contains non-finite samples");
  }
}

Field2D Field2D::filled(int width, int height, double value, double spacing) {
  if (!std::isfinite(value)) {
    throw InvalidArgument("fill value must be finite");
  }
  Field2D f(width, height, spacing);
  std::fill(f.data_.begin(), f.data_.end(), value);
  return f;
}

bool Field2D::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

double Field2D::l2_norm() const noexcept {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return std::sqrt(s) * spacing_;
}

double Field2D::max_abs() const noexcept {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

Mask2D::Mask2D(int width, int height, bool value) : width_(width), height_(height) {
  check_dims(width, height);
  inside_.assign(cell_count(width, height), value ? 1 : 0);
}

Mask2D::Mask2D(int width, int height, std::vector<std::uint8_t> inside)
    : Mask2D(width, height) {
  if (inside.size() != inside_.size()) {
    throw DimensionError("mask data has " + std::to_string(inside.size()) +
                         " entries, expected " + std::to_string(inside_.size()));
  }
  for (std::size_t i = 0; i < inside.size(); ++i) inside_[i] = inside[i] ? 1 : 0;
}

std::size_t Mask2D::count_inside() const noexcept {
  return static_cast<std::size_t>(std::count(inside_.begin(), inside_.end(), std::uint8_t{1}));
}

InpaintProblem::InpaintProblem(Field2D u0, Mask2D mask, double lambda0)
    : u0_(std::move(u0)), mask_(std::move(mask)), lambda0_(lambda0) {
  if (!mask_.matches(u0_)) {
    throw DimensionError("mask is " + std::to_string(mask_.width()) + "x" +
                         std::to_string(mask_.height()) + " but image is " +
                         std::to_string(u0_.width()) + "x" + std::to_string(u0_.height()));
  }
  if (!(lambda0_ >= 0.0) || !std::isfinite(lambda0_)) {
    throw InvalidArgument("lambda0 must be a finite nonnegative number");
  }
  for (double v : u0_.data()) {
    if (v < 0.0 || v > 1.0) {
      throw InvalidArgument("original image intensities must lie in [0,1]");
    }
  }
}

Field2D build_lambda_field(const InpaintProblem& problem) {
  const Field2D& u0 = problem.u0();
  Field2D lambda(u0.width(), u0.height(), u0.spacing());
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    lambda[i] = problem.mask().inside(i) ? 0.0 : problem.lambda0();
  }
  return lambda;
}

Field2D apply_damage(const Field2D& image, const Mask2D& mask, double fill) {
  if (!mask.matches(image)) throw DimensionError("apply_damage: mask does not match image");
  if (!std::isfinite(fill)) throw InvalidArgument("fill value must be finite");
  Field2D out = image;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (mask.inside(i)) out[i] = fill;
  }
  return out;
}

double mse(const Field2D& a, const Field2D& b) {
  return mse(a, b, Mask2D(a.width(), a.height()), Region::All);
}

double mse(const Field2D& a, const Field2D& b, const Mask2D& mask, Region region) {
  if (!a.same_grid(b) || !mask.matches(a)) {
    throw DimensionError("mse: field and mask dimensions differ");
  }
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const bool in = mask.inside(i);
    if ((region == Region::Inside && !in) || (region == Region::Outside && in)) continue;
    const double d = a[i] - b[i];
    sum += d * d;
    ++n;
  }
  return n == 0 ? 0.0 : sum / static_cast<double>(n);
}

Field2D generate_stripes(int width, int height, int stripe_period) {
  if (stripe_period < 2) {
    throw InvalidArgument("stripe period must be at least 2");
  }
  Field2D f(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      f(x, y) = 2 * (x % stripe_period) < stripe_period ? 1.0 : 0.0;
    }
  }
  return f;
}

Field2D generate_cross(int width, int height, int arm_thickness) {
  check_dims(width, height);
  if (arm_thickness < 1 || arm_thickness >= std::min(width, height)) {
    throw InvalidArgument("cross arm thickness must be in [1, min(width,height))");
  }
  const int x_lo = (width - arm_thickness) / 2;
  const int y_lo = (height - arm_thickness) / 2;
  Field2D f(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const bool vertical_arm = x >= x_lo && x < x_lo + arm_thickness;
      const bool horizontal_arm = y >= y_lo && y < y_lo + arm_thickness;
      f(x, y) = (vertical_arm || horizontal_arm) ? 1.0 : 0.0;
    }
  }
  return f;
}

Mask2D generate_mask_rect(int width, int height, int x0, int y0, int w, int h) {
  check_dims(width, height);
  if (w <= 0 || h <= 0 || x0 < 0 || y0 < 0 || x0 + w > width || y0 + h > height) {
    throw InvalidArgument("rectangle does not fit inside the grid");
  }
  Mask2D m(width, height);
  for (int y = y0; y < y0 + h; ++y) {
    for (int x = x0; x < x0 + w; ++x) m.set(x, y, true);
  }
  return m;
}

Mask2D generate_mask_hexagon(int width, int height, int cx, int cy, double radius) {
  check_dims(width, height);
  const double half_height = radius * std::sqrt(3.0) / 2.0;
  if (!(radius >= 0.0) || cx - radius < 0.0 || cx + radius > width - 1 ||
      cy - half_height < 0.0 || cy + half_height > height - 1) {
    throw InvalidArgument("hexagon does not fit inside the grid");
  }
  // Flat-top orientation: vertices at (cx +- r, cy) and (cx +- r/2, cy +- r*sqrt(3)/2).
  constexpr double kTol = 1e-9;
  const double sqrt3 = std::sqrt(3.0);
  Mask2D m(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const double dx = std::abs(static_cast<double>(x - cx));
      const double dy = std::abs(static_cast<double>(y - cy));
      if (dy <= half_height + kTol && sqrt3 * dx + dy <= sqrt3 * radius + kTol) {
        m.set(x, y, true);
      }
    }
  }
  return m;
}

}  // namespace sfch
