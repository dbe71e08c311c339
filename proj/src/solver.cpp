#include "sfch/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sfch/error.hpp"

namespace sfch {

namespace {

bool positive_finite(double v) { return v > 0.0 && std::isfinite(v); }

double max_abs_difference(const Field2D& a, const Field2D& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

void validate(const StepParams& params) {
  if (!positive_finite(params.epsilon)) throw InvalidArgument("epsilon must be positive");
  if (!positive_finite(params.dt)) throw InvalidArgument("dt must be positive");
  if (!positive_finite(params.c1)) throw InvalidArgument("c1 must be positive");
  if (!positive_finite(params.c2)) throw InvalidArgument("c2 must be positive");
  validate(params.variant);
}

Stepper::Stepper(const InpaintProblem& problem, const StepParams& params,
                 const SpectralWorkspace& ws)
    : problem_(problem), ws_(ws), params_(params), lambda_(build_lambda_field(problem)) {
  validate(params_);
  if (!ws.matches(problem.u0())) {
    throw DimensionError("workspace grid does not match the problem image");
  }
  const auto lap = ws.lap_symbol();
  const auto bilap = ws.bilap_symbol();
  denominator_.resize(ws.size());
  min_denominator_ = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < denominator_.size(); ++i) {
    denominator_[i] =
        1.0 + params_.dt * (params_.c2 + params_.epsilon * bilap[i] - params_.c1 * lap[i]);
    min_denominator_ = std::min(min_denominator_, denominator_[i]);
  }
  // K <= 0 and positive constants make every mode's denominator at least 1.
  if (!(min_denominator_ >= 1.0)) {
    throw Error("semi-implicit denominator dropped below 1 (" +
                std::to_string(min_denominator_) + ")");
  }
  u_hat_.resize(ws.size());
  packed_.resize(ws.size());
}

Field2D Stepper::advance(const Field2D& u) {
  if (!ws_.matches(u)) throw DimensionError("field does not match the stepper grid");

  for (std::size_t i = 0; i < u.size(); ++i) u_hat_[i] = Complex(u[i], 0.0);
  ws_.forward_in_place(u_hat_);

  Field2D drive = std::holds_alternative<ShockFilter>(params_.variant)
                      ? shock_term_from_spectrum(u_hat_, ws_,
                                                 std::get<ShockFilter>(params_.variant).delta)
                      : double_well_term(u);

  // Transform the drive h and the fidelity force lambda (u0 - u) together as
  // h + i f, then separate them by conjugate symmetry.
  const Field2D& u0 = problem_.u0();
  for (std::size_t i = 0; i < u.size(); ++i) {
    packed_[i] = Complex(drive[i], lambda_[i] * (u0[i] - u[i]));
  }
  ws_.forward_in_place(packed_);

  const int w = ws_.width();
  const int h = ws_.height();
  const auto lap = ws_.lap_symbol();
  const double dt = params_.dt;
  const double inv_eps = 1.0 / params_.epsilon;
  const double c1 = params_.c1;
  const double c2 = params_.c2;
  const Complex half_i(0.0, 0.5);

  for (int l = 0; l < h; ++l) {
    const int ml = (h - l) % h;
    for (int k = 0; k < w; ++k) {
      const int mk = (w - k) % w;
      const std::size_t i = static_cast<std::size_t>(l) * static_cast<std::size_t>(w) +
                            static_cast<std::size_t>(k);
      const std::size_t mi = static_cast<std::size_t>(ml) * static_cast<std::size_t>(w) +
                             static_cast<std::size_t>(mk);
      const Complex z = packed_[i];
      const Complex zm = std::conj(packed_[mi]);
      const Complex drive_hat = 0.5 * (z + zm);
      const Complex fidelity_hat = -half_i * (z - zm);
      const Complex uh = u_hat_[i];
      const Complex numerator =
          uh + dt * (inv_eps * lap[i] * drive_hat - c1 * lap[i] * uh + fidelity_hat + c2 * uh);
      u_hat_[i] = numerator / denominator_[i];
    }
  }
  ws_.backward_in_place(u_hat_);

  const double norm = 1.0 / static_cast<double>(u_hat_.size());
  Field2D next(w, h, u.spacing());
  bool finite = true;
  for (std::size_t i = 0; i < next.size(); ++i) {
    next[i] = u_hat_[i].real() * norm;
    finite = finite && std::isfinite(next[i]);
  }
  if (!finite) throw BlowUpError(0, "time step produced non-finite samples");
  return next;
}

Field2D step(const Field2D& u, const InpaintProblem& problem, const StepParams& params,
             const SpectralWorkspace& ws) {
  Stepper stepper(problem, params, ws);
  return stepper.advance(u);
}

double auto_c1(double epsilon) noexcept { return std::max(1.0, 3.0 / epsilon); }

double auto_c2(double lambda0) noexcept { return lambda0 + 1.0; }

void validate(const SolverConfig& cfg, double lambda0) {
  if (!positive_finite(cfg.dt)) throw InvalidArgument("dt must be positive");
  if (cfg.stages.empty()) throw InvalidArgument("at least one stage is required");
  for (const Stage& s : cfg.stages) {
    if (!positive_finite(s.epsilon)) throw InvalidArgument("epsilon must be positive");
    if (s.iterations <= 0) throw InvalidArgument("stage iterations must be positive");
  }
  if (cfg.c1 && !positive_finite(*cfg.c1)) throw InvalidArgument("c1 must be positive");
  if (cfg.c2) {
    if (!positive_finite(*cfg.c2)) throw InvalidArgument("c2 must be positive");
    if (!(*cfg.c2 > lambda0)) {
      throw InvalidArgument("c2 must exceed lambda0 (" + std::to_string(lambda0) + ")");
    }
  }
  if (cfg.residual_tol && !(*cfg.residual_tol >= 0.0)) {
    throw InvalidArgument("residual tolerance must be nonnegative");
  }
  if (cfg.record_every <= 0) throw InvalidArgument("record_every must be positive");
  validate(cfg.variant);
}

StepParams stage_params(const SolverConfig& cfg, const Stage& stage, double lambda0) {
  return StepParams{
      .epsilon = stage.epsilon,
      .dt = cfg.dt,
      .c1 = cfg.c1.value_or(auto_c1(stage.epsilon)),
      .c2 = cfg.c2.value_or(auto_c2(lambda0)),
      .variant = cfg.variant,
  };
}

double energy_e1(const Field2D& u, double epsilon, const NonlinearVariant& variant,
                 const SpectralWorkspace& ws) {
  if (!std::holds_alternative<DoubleWell>(variant)) {
    throw InvalidArgument("energy E1 is only defined for the double-well variant");
  }
  if (!positive_finite(epsilon)) throw InvalidArgument("epsilon must be positive");
  const Spectrum u_hat = ws.forward(u);
  const auto lap = ws.lap_symbol();
  double gradient_sum = 0.0;
  for (std::size_t i = 0; i < u_hat.size(); ++i) gradient_sum -= lap[i] * std::norm(u_hat[i]);
  gradient_sum /= static_cast<double>(u_hat.size());

  double potential_sum = 0.0;
  for (double v : u.data()) potential_sum += double_well_potential(v);

  const double cell = u.spacing() * u.spacing();
  return cell * (0.5 * epsilon * gradient_sum + potential_sum / epsilon);
}

double energy_e2(const Field2D& u, const InpaintProblem& problem) {
  const Field2D& u0 = problem.u0();
  if (!u.same_grid(u0)) throw DimensionError("energy_e2: field does not match the problem");
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (problem.mask().inside(i)) continue;
    const double d = u0[i] - u[i];
    sum += d * d;
  }
  return 0.5 * problem.lambda0() * u.spacing() * u.spacing() * sum;
}

DiagnosticsRecord diagnose(const Field2D& u, const InpaintProblem& problem, double epsilon,
                           const NonlinearVariant& variant, const SpectralWorkspace& ws,
                           const Field2D* truth) {
  DiagnosticsRecord r;
  r.epsilon = epsilon;
  if (std::holds_alternative<DoubleWell>(variant)) r.e1 = energy_e1(u, epsilon, variant, ws);
  r.e2 = energy_e2(u, problem);
  r.mse_known = mse(u, problem.u0(), problem.mask(), Region::Outside);
  if (truth != nullptr) r.mse_unknown = mse(u, *truth, problem.mask(), Region::Inside);
  return r;
}

RunResult run(const InpaintProblem& problem, const SolverConfig& cfg, const RunOptions& options) {
  validate(cfg, problem.lambda0());
  const Field2D& u0 = problem.u0();
  if (options.truth != nullptr && !options.truth->same_grid(u0)) {
    throw DimensionError("ground truth does not match the problem image");
  }
  const SpectralWorkspace ws(u0.width(), u0.height(), u0.spacing());

  RunResult result{u0, {}, 0};
  Field2D& u = result.u;
  long& iteration = result.iterations;
  double residual = 0.0;

  auto record = [&](double epsilon) {
    DiagnosticsRecord r = diagnose(u, problem, epsilon, cfg.variant, ws, options.truth);
    r.iteration = iteration;
    r.residual = residual;
    if (options.on_record) options.on_record(r);
    result.records.push_back(r);
  };

  record(cfg.stages.front().epsilon);
  for (const Stage& stage : cfg.stages) {
    Stepper stepper(problem, stage_params(cfg, stage, problem.lambda0()), ws);
    for (long n = 0; n < stage.iterations; ++n) {
      Field2D next = [&] {
        try {
          return stepper.advance(u);
        } catch (const BlowUpError&) {
          throw BlowUpError(iteration + 1, "numerical blow-up at iteration " +
                                               std::to_string(iteration + 1) + " (epsilon " +
                                               std::to_string(stage.epsilon) + ")");
        }
      }();
      residual = max_abs_difference(next, u);
      u = std::move(next);
      ++iteration;
      if (options.on_step) options.on_step(iteration, stage.epsilon, u);

      const bool converged = cfg.residual_tol && residual < *cfg.residual_tol;
      if (iteration % cfg.record_every == 0 || converged) record(stage.epsilon);
      if (converged) break;
    }
  }
  if (result.records.back().iteration != iteration) record(cfg.stages.back().epsilon);
  return result;
}

}  // namespace sfch
