#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "sfch/error.hpp"
#include "sfch/image_io.hpp"

using namespace sfch;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::initializer_list<std::string> args) {
  std::vector<std::string> storage{"sfch-inpaint"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : storage) argv.push_back(s.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string dir() {
  const fs::path d = fs::temp_directory_path() / "sfch_test_cli";
  fs::create_directories(d);
  return d.string() + "/";
}

std::string read_bytes(const std::string& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("stage parsing") {
  const auto stages = cli::parse_stages("100:4000, 2:26000");
  REQUIRE(stages.size() == 2);
  CHECK(stages[0].epsilon == 100.0);
  CHECK(stages[0].iterations == 4000);
  CHECK(stages[1].epsilon == 2.0);
  CHECK(stages[1].iterations == 26000);
  CHECK(cli::parse_stages("0.5:3")[0].epsilon == 0.5);

  CHECK_THROWS_WITH_AS(cli::parse_stages("0:100"), "epsilon must be positive", InvalidArgument);
  CHECK_THROWS_WITH_AS(cli::parse_stages("-1:100"), "epsilon must be positive", InvalidArgument);
  CHECK_THROWS_AS(cli::parse_stages("1:0"), InvalidArgument);
  CHECK_THROWS_AS(cli::parse_stages(""), InvalidArgument);
  CHECK_THROWS_AS(cli::parse_stages("1"), InvalidArgument);
  CHECK_THROWS_AS(cli::parse_stages("a:1"), InvalidArgument);
  CHECK_THROWS_AS(cli::parse_stages("1:2.5"), InvalidArgument);
  CHECK_THROWS_AS(cli::parse_stages("1:10,"), InvalidArgument);
}

TEST_CASE("usage errors") {
  CHECK(invoke({}).code == cli::kUsageOrIoError);
  CHECK(invoke({"frobnicate"}).code == cli::kUsageOrIoError);
  CHECK(invoke({"inpaint", "--image", "a.pgm"}).code == cli::kUsageOrIoError);
  CHECK(invoke({"gen", "--out-image", "a.pgm", "--out-mask", "b.pgm", "--bogus", "1"}).code ==
        cli::kUsageOrIoError);
  CHECK(invoke({"--help"}).code == cli::kOk);
}

TEST_CASE("bad stage string is reported") {
  const std::string d = dir();
  REQUIRE(invoke({"gen", "--size", "16x16", "--out-image", d + "s.pgm", "--out-mask",
                  d + "s_mask.pgm"})
              .code == cli::kOk);
  const Outcome o = invoke({"inpaint", "--image", d + "s.pgm", "--mask", d + "s_mask.pgm",
                            "--out", d + "s_out.pgm", "--stages", "0:100"});
  CHECK(o.code == cli::kUsageOrIoError);
  CHECK(o.err.find("epsilon must be positive") != std::string::npos);
}

TEST_CASE("gen") {
  const std::string d = dir();
  Outcome o = invoke({"gen", "--shape", "cross", "--mask", "hexagon", "--size", "64x64",
                      "--out-image", d + "cross.pgm", "--out-mask", d + "hex.pgm",
                      "--out-damaged", d + "cross_damaged.png"});
  REQUIRE(o.code == cli::kOk);
  CHECK(load_grayscale(d + "cross.pgm") == generate_cross(64, 64, 16));
  const Mask2D hex = load_mask(d + "hex.pgm");
  CHECK(hex == generate_mask_hexagon(64, 64, 32, 32, 16.0));
  const Field2D damaged = load_grayscale(d + "cross_damaged.png");
  CHECK(damaged(32, 32) == 128.0 / 255.0);
  CHECK(damaged(0, 0) == 0.0);

  o = invoke({"gen", "--shape", "stripes", "--mask", "rect", "--size", "8x6", "--rect",
              "0,0,8,6", "--period", "4", "--out-image", d + "st.pgm", "--out-mask",
              d + "st_mask.pgm"});
  REQUIRE(o.code == cli::kOk);
  CHECK(load_mask(d + "st_mask.pgm") == Mask2D(8, 6, true));
  CHECK(load_grayscale(d + "st.pgm") == generate_stripes(8, 6, 4));

  o = invoke({"gen", "--size", "0x64", "--out-image", d + "z.pgm", "--out-mask", d + "zm.pgm"});
  CHECK(o.code == cli::kUsageOrIoError);
  CHECK_FALSE(o.err.empty());

  o = invoke({"gen", "--size", "16x16", "--mask", "rect", "--rect", "10,10,8,8", "--out-image",
              d + "z.pgm", "--out-mask", d + "zm.pgm"});
  CHECK(o.code == cli::kUsageOrIoError);

  o = invoke({"gen", "--shape", "circle", "--out-image", d + "z.pgm", "--out-mask",
              d + "zm.pgm"});
  CHECK(o.code == cli::kUsageOrIoError);
}

TEST_CASE("inpaint is reproducible and writes diagnostics") {
  const std::string d = dir();
  REQUIRE(invoke({"gen", "--shape", "cross", "--size", "32x32", "--out-image", d + "t.pgm",
                  "--out-mask", d + "t_mask.pgm", "--out-damaged", d + "t_dmg.pgm"})
              .code == cli::kOk);
  for (const char* name : {"r1", "r2"}) {
    const Outcome o = invoke({"inpaint", "--image", d + "t_dmg.pgm", "--mask", d + "t_mask.pgm",
                              "--out", d + name + ".pgm", "--stages", "100:60,2:40", "--diag",
                              d + name + ".csv", "--record-every", "20", "--truth", d + "t.pgm"});
    REQUIRE(o.code == cli::kOk);
    CHECK(o.err.find("iteration 20") != std::string::npos);
  }
  CHECK(read_bytes(d + "r1.pgm") == read_bytes(d + "r2.pgm"));
  CHECK(read_bytes(d + "r1.csv") == read_bytes(d + "r2.csv"));

  std::istringstream csv(read_bytes(d + "r1.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "iteration,epsilon,e1,e2,residual,mse_known,mse_unknown");
  int rows = 0;
  while (std::getline(csv, line)) ++rows;
  CHECK(rows == 6);

  const Outcome png = invoke({"inpaint", "--image", d + "t_dmg.pgm", "--mask", d + "t_mask.pgm",
                              "--out", d + "r.png", "--stages", "1:5", "--variant", "doublewell",
                              "--c1", "4", "--c2", "auto", "--lambda0", "50"});
  CHECK(png.code == cli::kOk);
  CHECK(load_grayscale(d + "r.png").width() == 32);
}

TEST_CASE("inpaint input errors") {
  const std::string d = dir();
  REQUIRE(invoke({"gen", "--size", "16x16", "--out-image", d + "e.pgm", "--out-mask",
                  d + "e_mask.pgm"})
              .code == cli::kOk);
  REQUIRE(invoke({"gen", "--size", "8x8", "--out-image", d + "e8.pgm", "--out-mask",
                  d + "e8_mask.pgm"})
              .code == cli::kOk);
  CHECK(invoke({"inpaint", "--image", d + "missing.pgm", "--mask", d + "e_mask.pgm", "--out",
                d + "o.pgm"})
            .code == cli::kUsageOrIoError);
  CHECK(invoke({"inpaint", "--image", d + "e.pgm", "--mask", d + "e8_mask.pgm", "--out",
                d + "o.pgm"})
            .code == cli::kUsageOrIoError);
  CHECK(invoke({"inpaint", "--image", d + "e.pgm", "--mask", d + "e_mask.pgm", "--out",
                d + "o.pgm", "--c2", "5", "--lambda0", "10", "--stages", "1:1"})
            .code == cli::kUsageOrIoError);
  CHECK(invoke({"inpaint", "--image", d + "e.pgm", "--mask", d + "e_mask.pgm", "--out",
                d + "o.pgm", "--c1", "fast", "--stages", "1:1"})
            .code == cli::kUsageOrIoError);
}

TEST_CASE("numerical blow-up exits with code 2") {
  const std::string d = dir();
  REQUIRE(invoke({"gen", "--shape", "stripes", "--period", "4", "--size", "16x16",
                  "--out-image", d + "b.pgm", "--out-mask", d + "b_mask.pgm"})
              .code == cli::kOk);
  const Outcome o = invoke({"inpaint", "--image", d + "b.pgm", "--mask", d + "b_mask.pgm",
                            "--out", d + "b_out.pgm", "--variant", "doublewell", "--stages",
                            "0.001:200", "--c1", "0.001", "--dt", "1000", "--lambda0", "0"});
  CHECK(o.code == cli::kBlowUp);
  CHECK(o.err.find("iteration") != std::string::npos);
}

TEST_CASE("compare") {
  const std::string d = dir();
  REQUIRE(invoke({"gen", "--shape", "cross", "--size", "16x16", "--out-image", d + "c.pgm",
                  "--out-mask", d + "c_mask.pgm"})
              .code == cli::kOk);
  REQUIRE(invoke({"gen", "--size", "8x8", "--out-image", d + "c8.pgm", "--out-mask",
                  d + "c8_mask.pgm"})
              .code == cli::kOk);

  Outcome o = invoke({"compare", "--truth", d + "c8.pgm", "--image", d + "c.pgm", "--mask",
                      d + "c_mask.pgm", "--out-prefix", d + "cmp"});
  CHECK(o.code == cli::kUsageOrIoError);

  // A constant undamaged image is a fixed point for both variants.
  std::ofstream(d + "flat.pgm", std::ios::binary)
      << "P5\n16 16\n255\n" << std::string(256, '\0');
  o = invoke({"compare", "--truth", d + "flat.pgm", "--image", d + "flat.pgm", "--mask",
              d + "c_mask.pgm", "--out-prefix", d + "flat", "--stages-a", "100:20,2:20",
              "--stages-b", "100:20,1:20"});
  REQUIRE(o.code == cli::kOk);
  std::istringstream table(o.out);
  std::string header, variant;
  long iterations = 0;
  double all = -1.0, omega = -1.0;
  std::getline(table, header);
  CHECK(header.find("mse_omega") != std::string::npos);
  table >> variant >> iterations >> all >> omega;
  CHECK(variant == "shock");
  CHECK(iterations == 40);
  CHECK(all == 0.0);
  CHECK(omega == 0.0);
  table >> variant >> iterations >> all >> omega;
  CHECK(variant == "doublewell");
  CHECK(all == 0.0);
  CHECK(omega == 0.0);
  CHECK(fs::exists(d + "flat_shock.pgm"));
  CHECK(fs::exists(d + "flat_doublewell.pgm"));
}

TEST_CASE("diag prints one record") {
  const std::string d = dir();
  REQUIRE(invoke({"gen", "--size", "16x16", "--out-image", d + "g.pgm", "--out-mask",
                  d + "g_mask.pgm"})
              .code == cli::kOk);
  const Outcome o = invoke({"diag", "--image", d + "g.pgm", "--reference", d + "g.pgm",
                            "--mask", d + "g_mask.pgm", "--truth", d + "g.pgm"});
  REQUIRE(o.code == cli::kOk);
  std::istringstream in(o.out);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(header == "iteration,epsilon,e1,e2,residual,mse_known,mse_unknown");
  CHECK(row.rfind("0,1,", 0) == 0);
  CHECK(row.substr(row.size() - 6) == ",0,0,0");
}
