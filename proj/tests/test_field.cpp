#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "sfch/error.hpp"
#include "sfch/field.hpp"
#include "sfch/image_io.hpp"

using namespace sfch;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "sfch_test_field";
  fs::create_directories(dir);
  return dir / name;
}

void write_bytes(const fs::path& p, const std::string& bytes) {
  std::ofstream f(p, std::ios::binary);
  f << bytes;
}

std::string read_bytes(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("field construction and validation") {
  CHECK_THROWS_AS(Field2D(0, 4), InvalidArgument);
  CHECK_THROWS_AS(Field2D(4, -1), InvalidArgument);
  CHECK_THROWS_AS(Field2D(2, 2, std::vector<double>{1, 2, 3}), DimensionError);
  CHECK_THROWS_AS(Field2D(1, 1, std::vector<double>{std::nan("")}), InvalidArgument);

  Field2D f(3, 2);
  f(2, 1) = 7.0;
  CHECK(f[5] == 7.0);
  CHECK(Field2D::filled(2, 2, 0.25).max_abs() == 0.25);
  CHECK(Field2D::filled(2, 2, 1.0, 0.5).l2_norm() == doctest::Approx(1.0));
}

TEST_CASE("problem validation") {
  const Field2D u0 = Field2D::filled(4, 4, 0.5);
  CHECK_THROWS_AS(InpaintProblem(u0, Mask2D(4, 3), 1.0), DimensionError);
  CHECK_THROWS_AS(InpaintProblem(u0, Mask2D(4, 4), -1.0), InvalidArgument);
  CHECK_THROWS_AS(InpaintProblem(Field2D::filled(4, 4, 1.5), Mask2D(4, 4), 1.0), InvalidArgument);
  CHECK_NOTHROW(InpaintProblem(u0, Mask2D(4, 4), 0.0));
}

TEST_CASE("lambda field is zero inside the damaged region") {
  Mask2D mask(3, 3);
  mask.set(1, 1, true);
  const InpaintProblem p(Field2D::filled(3, 3, 0.0), mask, 10.0);
  const Field2D lambda = build_lambda_field(p);
  CHECK(lambda(1, 1) == 0.0);
  CHECK(lambda(0, 0) == 10.0);
  double total = 0.0;
  for (double v : lambda.data()) total += v;
  CHECK(total == 80.0);
}

TEST_CASE("mse over regions") {
  const Field2D a(2, 1, {0.0, 1.0});
  const Field2D b(2, 1, {0.0, 0.0});
  Mask2D mask(2, 1);
  mask.set(1, 0, true);
  CHECK(mse(a, b) == 0.5);
  CHECK(mse(a, b, mask, Region::Inside) == 1.0);
  CHECK(mse(a, b, mask, Region::Outside) == 0.0);
  CHECK(mse(a, b, Mask2D(2, 1), Region::Inside) == 0.0);
  CHECK_THROWS_AS(mse(a, Field2D(1, 2)), DimensionError);

  std::mt19937 rng(3);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  Field2D x(5, 4), y(5, 4);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = dist(rng);
    y[i] = dist(rng);
  }
  CHECK(mse(x, x) == 0.0);
  CHECK(mse(x, y) == mse(y, x));
}

TEST_CASE("apply_damage overwrites only masked pixels") {
  const Field2D img(2, 1, {0.0, 1.0});
  Mask2D mask(2, 1);
  mask.set(0, 0, true);
  const Field2D d = apply_damage(img, mask);
  CHECK(d[0] == 0.5);
  CHECK(d[1] == 1.0);
}

TEST_CASE("stripes") {
  const Field2D s = generate_stripes(4, 1, 2);
  CHECK(s[0] == 1.0);
  CHECK(s[1] == 0.0);
  CHECK(s[2] == 1.0);
  CHECK(s[3] == 0.0);

  const Field2D t = generate_stripes(8, 2, 4);
  for (int y = 0; y < 2; ++y) {
    for (int x = 0; x < 8; ++x) CHECK(t(x, y) == (x % 4 < 2 ? 1.0 : 0.0));
  }
  CHECK_THROWS_AS(generate_stripes(8, 8, 1), InvalidArgument);
}

TEST_CASE("cross") {
  const Field2D c = generate_cross(8, 8, 2);
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) {
      const bool arm = x == 3 || x == 4 || y == 3 || y == 4;
      CHECK(c(x, y) == (arm ? 1.0 : 0.0));
    }
  }
  CHECK_THROWS_AS(generate_cross(8, 8, 8), InvalidArgument);
  CHECK_THROWS_AS(generate_cross(8, 8, 0), InvalidArgument);
}

TEST_CASE("rectangle mask") {
  CHECK(generate_mask_rect(64, 64, 16, 24, 32, 16).count_inside() == 512);
  const Mask2D full = generate_mask_rect(5, 3, 0, 0, 5, 3);
  CHECK(full == Mask2D(5, 3, true));
  CHECK_THROWS_AS(generate_mask_rect(8, 8, 4, 4, 5, 1), InvalidArgument);
  CHECK_THROWS_AS(generate_mask_rect(8, 8, 0, 0, 0, 1), InvalidArgument);
}

TEST_CASE("hexagon mask") {
  const Mask2D dot = generate_mask_hexagon(9, 9, 4, 4, 0.0);
  CHECK(dot.count_inside() == 1);
  CHECK(dot.inside(4, 4));

  const Mask2D hex = generate_mask_hexagon(64, 64, 32, 32, 16.0);
  // Vertices on the horizontal axis are inside, beyond them is not.
  CHECK(hex.inside(16, 32));
  CHECK(hex.inside(48, 32));
  CHECK_FALSE(hex.inside(15, 32));
  // Flat top edge at height r*sqrt(3)/2 ~ 13.86.
  CHECK(hex.inside(32, 32 - 13));
  CHECK_FALSE(hex.inside(32, 32 - 14));
  // Symmetric under both reflections.
  for (int y = 0; y < 64; ++y) {
    for (int x = 1; x < 64; ++x) {
      CHECK(hex.inside(x, y) == hex.inside(64 - x, y));
    }
  }
  CHECK_THROWS_AS(generate_mask_hexagon(64, 64, 5, 32, 16.0), InvalidArgument);
  CHECK_THROWS_AS(generate_mask_hexagon(8, 8, 4, 4, -1.0), InvalidArgument);
}

TEST_CASE("quantize") {
  CHECK(quantize(0.5) == 128);
  CHECK(quantize(1.3) == 255);
  CHECK(quantize(-0.2) == 0);
  CHECK(quantize(1.0) == 255);
}

TEST_CASE("PGM decoding") {
  const fs::path p = scratch("two.pgm");
  write_bytes(p, std::string("P5\n# comment\n2 2\n255\n") + std::string("\x00\xff\x80\x40", 4));
  const Field2D f = load_grayscale(p);
  CHECK(f.width() == 2);
  CHECK(f.height() == 2);
  CHECK(f(0, 0) == 0.0);
  CHECK(f(1, 0) == 1.0);
  CHECK(f(0, 1) == 128.0 / 255.0);
  CHECK(f(1, 1) == 64.0 / 255.0);

  write_bytes(p, std::string("P5 1 1 255\n\x80", 12));
  CHECK(load_grayscale(p)[0] == doctest::Approx(128.0 / 255.0));

  write_bytes(p, std::string("P5\n2 2\n255\n\x01\x02", 13));
  CHECK_THROWS_AS(load_grayscale(p), FormatError);

  write_bytes(p, "P5\n0 2\n255\n");
  CHECK_THROWS_AS(load_grayscale(p), FormatError);

  write_bytes(p, "P5\n1 1\n65535\n\x01\x02");
  CHECK_THROWS_AS(load_grayscale(p), FormatError);

  write_bytes(p, "GIF89a");
  CHECK_THROWS_AS(load_grayscale(p), FormatError);

  CHECK_THROWS_AS(load_grayscale(scratch("does_not_exist.pgm")), IoError);
  CHECK_THROWS_AS(save_grayscale(f, scratch("x.bmp")), IoError);
}

TEST_CASE("save/load round trip is exact after one quantisation") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> dist(-0.1, 1.1);
  for (const char* ext : {".pgm", ".png"}) {
    Field2D f(7, 5);
    for (double& v : f.data()) v = dist(rng);
    const fs::path a = scratch(std::string("a") + ext);
    const fs::path b = scratch(std::string("b") + ext);
    save_grayscale(f, a);
    const Field2D once = load_grayscale(a);
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(once[i] == quantize(f[i]) / 255.0);
    save_grayscale(once, b);
    CHECK(load_grayscale(b) == once);
    CHECK(read_bytes(a) == read_bytes(b));
  }
}

TEST_CASE("mask files threshold at 128") {
  const fs::path p = scratch("mask.pgm");
  write_bytes(p, std::string("P5\n3 1\n255\n\x7f\x80\xff", 14));
  const Mask2D m = load_mask(p);
  CHECK_FALSE(m.inside(0, 0));
  CHECK(m.inside(1, 0));
  CHECK(m.inside(2, 0));

  const Mask2D hex = generate_mask_hexagon(16, 16, 8, 8, 5.0);
  save_mask(hex, scratch("hex.png"));
  CHECK(load_mask(scratch("hex.png")) == hex);
}
