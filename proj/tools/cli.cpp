#include "cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>

#include "sfch/diagnostics_csv.hpp"
#include "sfch/error.hpp"
#include "sfch/image_io.hpp"

namespace sfch::cli {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return std::string(s.substr(first, last - first + 1));
}

double parse_real(std::string_view text, const std::string& what) {
  const std::string s = trim(text);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || end != s.data() + s.size() || !std::isfinite(value)) {
    throw InvalidArgument("invalid " + what + " '" + std::string(text) + "'");
  }
  return value;
}

long parse_integer(std::string_view text, const std::string& what) {
  const std::string s = trim(text);
  long value = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || end != s.data() + s.size()) {
    throw InvalidArgument("invalid " + what + " '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::optional<double> parse_auto_or_real(const std::string& text, const std::string& what) {
  if (text == "auto") return std::nullopt;
  return parse_real(text, what);
}

struct SolverFlags {
  std::string variant = "shock";
  std::string stages;
  double dt = 1.0;
  double lambda0 = 1e4;
  std::string c1 = "auto";
  std::string c2 = "auto";
  double delta = 0.0;
  std::optional<double> tol;
  long record_every = 100;
};

void add_solver_flags(CLI::App* cmd, SolverFlags& f, bool with_variant) {
  if (with_variant) {
    cmd->add_option("--variant", f.variant, "Drive term")
        ->check(CLI::IsMember({"shock", "doublewell"}))
        ->capture_default_str();
  }
  cmd->add_option("--dt", f.dt, "Time step")->capture_default_str();
  cmd->add_option("--lambda0", f.lambda0, "Fidelity weight on known pixels")
      ->capture_default_str();
  cmd->add_option("--c1", f.c1, "Stabilisation constant C1 or 'auto'")->capture_default_str();
  cmd->add_option("--c2", f.c2, "Stabilisation constant C2 or 'auto'")->capture_default_str();
  cmd->add_option("--delta", f.delta, "Gradient regularisation of the shock term")
      ->capture_default_str();
  cmd->add_option("--tol", f.tol, "Stop a stage when max|u_new - u| drops below this");
  cmd->add_option("--record-every", f.record_every, "Diagnostics interval in iterations")
      ->capture_default_str();
}

SolverConfig make_config(const SolverFlags& f, const std::string& variant,
                         const std::string& stages) {
  SolverConfig cfg;
  cfg.dt = f.dt;
  cfg.stages = parse_stages(stages);
  cfg.c1 = parse_auto_or_real(f.c1, "c1");
  cfg.c2 = parse_auto_or_real(f.c2, "c2");
  if (variant == "shock") {
    cfg.variant = ShockFilter{f.delta};
  } else {
    cfg.variant = DoubleWell{};
  }
  cfg.residual_tol = f.tol;
  cfg.record_every = f.record_every;
  return cfg;
}

std::pair<int, int> parse_size(const std::string& text) {
  const auto x = text.find_first_of("xX");
  if (x == std::string::npos) throw InvalidArgument("size must look like WxH, got '" + text + "'");
  const long w = parse_integer(std::string_view(text).substr(0, x), "width");
  const long h = parse_integer(std::string_view(text).substr(x + 1), "height");
  if (w <= 0 || h <= 0 || w > 1 << 16 || h > 1 << 16) {
    throw InvalidArgument("size must be positive, got '" + text + "'");
  }
  return {static_cast<int>(w), static_cast<int>(h)};
}

std::vector<long> parse_int_list(const std::string& text, std::size_t count,
                                 const std::string& what) {
  const auto parts = split(text, ',');
  if (parts.size() != count) {
    throw InvalidArgument(what + " needs " + std::to_string(count) + " comma-separated integers");
  }
  std::vector<long> values;
  for (auto p : parts) values.push_back(parse_integer(p, what));
  return values;
}

RunResult solve(const InpaintProblem& problem, const SolverConfig& cfg, const Field2D* truth,
                std::ostream& err) {
  RunOptions options;
  options.truth = truth;
  options.on_record = [&err](const DiagnosticsRecord& r) {
    if (r.iteration > 0) err << "iteration " << r.iteration << " (epsilon " << r.epsilon << ")\n";
  };
  return run(problem, cfg, options);
}

struct InpaintArgs {
  std::string image, mask, out, diag, truth;
  SolverFlags solver;
};

int do_inpaint(const InpaintArgs& a, std::ostream& err) {
  const std::string stages = a.solver.stages.empty() ? "100:4000,2:4000" : a.solver.stages;
  const SolverConfig cfg = make_config(a.solver, a.solver.variant, stages);
  const InpaintProblem problem(load_grayscale(a.image), load_mask(a.mask), a.solver.lambda0);
  std::optional<Field2D> truth;
  if (!a.truth.empty()) truth = load_grayscale(a.truth);
  const RunResult result = solve(problem, cfg, truth ? &*truth : nullptr, err);
  save_grayscale(result.u, a.out);
  if (!a.diag.empty()) write_diagnostics_csv(a.diag, result.records);
  return kOk;
}

struct CompareArgs {
  std::string truth, image, mask, out_prefix;
  std::string stages_a = "100:4000,2:4000";
  std::string stages_b = "100:4000,1:4000";
  SolverFlags solver;
};

int do_compare(const CompareArgs& a, std::ostream& out, std::ostream& err) {
  const Field2D truth = load_grayscale(a.truth);
  const InpaintProblem problem(load_grayscale(a.image), load_mask(a.mask), a.solver.lambda0);
  if (!truth.same_grid(problem.u0())) {
    throw DimensionError("truth is " + std::to_string(truth.width()) + "x" +
                         std::to_string(truth.height()) + " but image is " +
                         std::to_string(problem.u0().width()) + "x" +
                         std::to_string(problem.u0().height()));
  }
  struct Row {
    std::string variant;
    long iterations;
    double mse_all;
    double mse_omega;
  };
  std::vector<Row> rows;
  for (const auto& [variant, stages] :
       {std::pair{std::string("shock"), a.stages_a}, std::pair{std::string("doublewell"), a.stages_b}}) {
    const SolverConfig cfg = make_config(a.solver, variant, stages);
    err << "running " << variant << '\n';
    const RunResult result = solve(problem, cfg, &truth, err);
    save_grayscale(result.u, a.out_prefix + "_" + variant + ".pgm");
    rows.push_back({variant, result.iterations, mse(result.u, truth),
                    mse(result.u, truth, problem.mask(), Region::Inside)});
  }
  out << std::left << std::setw(12) << "variant" << std::setw(12) << "iterations"
      << std::setw(16) << "mse_all" << "mse_omega" << '\n';
  for (const Row& r : rows) {
    std::ostringstream all, omega;
    all << std::setprecision(6) << r.mse_all;
    omega << std::setprecision(6) << r.mse_omega;
    out << std::left << std::setw(12) << r.variant << std::setw(12) << r.iterations
        << std::setw(16) << all.str() << omega.str() << '\n';
  }
  return kOk;
}

struct GenArgs {
  std::string shape = "cross";
  std::string mask = "hexagon";
  std::string size = "64x64";
  int period = 8;
  std::optional<int> thickness;
  std::string rect;
  std::string center;
  std::optional<double> radius;
  std::string out_image, out_mask;
  std::string out_damaged;
};

int do_gen(const GenArgs& a) {
  const auto [w, h] = parse_size(a.size);
  const Field2D image = a.shape == "stripes"
                            ? generate_stripes(w, h, a.period)
                            : generate_cross(w, h, a.thickness.value_or(std::min(w, h) / 4));
  Mask2D mask(w, h);
  if (a.mask == "rect") {
    if (a.rect.empty()) {
      mask = generate_mask_rect(w, h, (w - w / 4) / 2, (h - h / 4) / 2, std::max(1, w / 4),
                                std::max(1, h / 4));
    } else {
      const auto r = parse_int_list(a.rect, 4, "--rect");
      mask = generate_mask_rect(w, h, static_cast<int>(r[0]), static_cast<int>(r[1]),
                                static_cast<int>(r[2]), static_cast<int>(r[3]));
    }
  } else {
    int cx = w / 2;
    int cy = h / 2;
    if (!a.center.empty()) {
      const auto c = parse_int_list(a.center, 2, "--center");
      cx = static_cast<int>(c[0]);
      cy = static_cast<int>(c[1]);
    }
    mask = generate_mask_hexagon(w, h, cx, cy, a.radius.value_or(std::min(w, h) / 4.0));
  }
  save_grayscale(image, a.out_image);
  save_mask(mask, a.out_mask);
  if (!a.out_damaged.empty()) save_grayscale(apply_damage(image, mask), a.out_damaged);
  return kOk;
}

struct DiagArgs {
  std::string image, reference, mask, truth, out;
  std::string variant = "doublewell";
  double epsilon = 1.0;
  double lambda0 = 1e4;
};

int do_diag(const DiagArgs& a, std::ostream& out) {
  const InpaintProblem problem(load_grayscale(a.reference), load_mask(a.mask), a.lambda0);
  const Field2D u = load_grayscale(a.image);
  if (!u.same_grid(problem.u0())) throw DimensionError("image and reference sizes differ");
  std::optional<Field2D> truth;
  if (!a.truth.empty()) truth = load_grayscale(a.truth);
  if (!(a.epsilon > 0.0)) throw InvalidArgument("epsilon must be positive");
  const NonlinearVariant variant =
      a.variant == "shock" ? NonlinearVariant{ShockFilter{}} : NonlinearVariant{DoubleWell{}};
  const SpectralWorkspace ws(u.width(), u.height(), u.spacing());
  const DiagnosticsRecord record =
      diagnose(u, problem, a.epsilon, variant, ws, truth ? &*truth : nullptr);
  if (a.out.empty()) {
    write_diagnostics_csv(out, std::span(&record, 1));
  } else {
    write_diagnostics_csv(a.out, std::span(&record, 1));
  }
  return kOk;
}

}  // namespace

std::vector<Stage> parse_stages(std::string_view text) {
  std::vector<Stage> stages;
  if (trim(text).empty()) throw InvalidArgument("stage list is empty");
  for (std::string_view item : split(text, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string_view::npos) {
      throw InvalidArgument("stage '" + std::string(item) + "' must look like eps:iters");
    }
    Stage s;
    s.epsilon = parse_real(item.substr(0, colon), "epsilon");
    s.iterations = parse_integer(item.substr(colon + 1), "iteration count");
    if (!(s.epsilon > 0.0)) throw InvalidArgument("epsilon must be positive");
    if (s.iterations <= 0) throw InvalidArgument("iteration count must be positive");
    stages.push_back(s);
  }
  return stages;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Shock-filter Cahn-Hilliard image inpainting"};
  app.require_subcommand(1);

  InpaintArgs inpaint;
  auto* inpaint_cmd = app.add_subcommand("inpaint", "Inpaint the masked region of an image");
  inpaint_cmd->add_option("--image", inpaint.image, "Damaged image (PGM/PNG)")->required();
  inpaint_cmd->add_option("--mask", inpaint.mask, "Mask image, >=128 marks damage")->required();
  inpaint_cmd->add_option("--out", inpaint.out, "Output image (.pgm or .png)")->required();
  inpaint_cmd->add_option("--stages", inpaint.solver.stages,
                          "Schedule eps:iters,... (default 100:4000,2:4000)");
  inpaint_cmd->add_option("--diag", inpaint.diag, "Write diagnostics CSV here");
  inpaint_cmd->add_option("--truth", inpaint.truth, "Ground truth for mse_unknown");
  add_solver_flags(inpaint_cmd, inpaint.solver, true);

  CompareArgs compare;
  auto* compare_cmd =
      app.add_subcommand("compare", "Run shock-filter and double-well inpainting side by side");
  compare_cmd->add_option("--truth", compare.truth, "Undamaged image")->required();
  compare_cmd->add_option("--image", compare.image, "Damaged image")->required();
  compare_cmd->add_option("--mask", compare.mask, "Mask image")->required();
  compare_cmd->add_option("--out-prefix", compare.out_prefix, "Output path prefix")->required();
  compare_cmd->add_option("--stages-a", compare.stages_a, "Shock-filter schedule")
      ->capture_default_str();
  compare_cmd->add_option("--stages-b", compare.stages_b, "Double-well schedule")
      ->capture_default_str();
  add_solver_flags(compare_cmd, compare.solver, false);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic test image and mask");
  gen_cmd->add_option("--shape", gen.shape)
      ->check(CLI::IsMember({"stripes", "cross"}))
      ->capture_default_str();
  gen_cmd->add_option("--mask", gen.mask)
      ->check(CLI::IsMember({"rect", "hexagon"}))
      ->capture_default_str();
  gen_cmd->add_option("--size", gen.size, "WxH")->capture_default_str();
  gen_cmd->add_option("--period", gen.period, "Stripe period in pixels")->capture_default_str();
  gen_cmd->add_option("--thickness", gen.thickness, "Cross arm thickness (default min/4)");
  gen_cmd->add_option("--rect", gen.rect, "x0,y0,w,h (default centred quarter)");
  gen_cmd->add_option("--center", gen.center, "Hexagon centre cx,cy (default image centre)");
  gen_cmd->add_option("--radius", gen.radius, "Hexagon circumradius (default min/4)");
  gen_cmd->add_option("--out-image", gen.out_image)->required();
  gen_cmd->add_option("--out-mask", gen.out_mask)->required();
  gen_cmd->add_option("--out-damaged", gen.out_damaged,
                      "Also write the image with the masked region set to mid-grey");

  DiagArgs diag;
  auto* diag_cmd = app.add_subcommand("diag", "Print the diagnostics record of an image");
  diag_cmd->add_option("--image", diag.image, "Field to evaluate")->required();
  diag_cmd->add_option("--reference", diag.reference, "Original damaged image u0")->required();
  diag_cmd->add_option("--mask", diag.mask, "Mask image")->required();
  diag_cmd->add_option("--truth", diag.truth, "Ground truth for mse_unknown");
  diag_cmd->add_option("--epsilon", diag.epsilon)->capture_default_str();
  diag_cmd->add_option("--lambda0", diag.lambda0)->capture_default_str();
  diag_cmd->add_option("--variant", diag.variant)
      ->check(CLI::IsMember({"shock", "doublewell"}))
      ->capture_default_str();
  diag_cmd->add_option("--out", diag.out, "CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsageOrIoError;
  }

  try {
    if (*inpaint_cmd) return do_inpaint(inpaint, err);
    if (*compare_cmd) return do_compare(compare, out, err);
    if (*gen_cmd) return do_gen(gen);
    if (*diag_cmd) return do_diag(diag, out);
  } catch (const BlowUpError& e) {
    err << "error: " << e.what() << '\n';
    return kBlowUp;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsageOrIoError;
  }
  return kUsageOrIoError;
}

}  // namespace sfch::cli
