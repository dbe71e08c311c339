#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "sfch/field.hpp"
#include "sfch/nonlinearity.hpp"
#include "sfch/spectral.hpp"

namespace sfch {

/// Constants of one semi-implicit step. The drive coefficients of the model
/// are nu = 1/epsilon (nonlinear term) and mu = epsilon (bilaplacian).
struct StepParams {
  double epsilon = 1.0;
  double dt = 1.0;
  double c1 = 3.0;
  double c2 = 1.0;
  NonlinearVariant variant = ShockFilter{};
};

void validate(const StepParams& params);

/// Advances the convexity-split scheme by one step.
///
/// In Fourier space, with K the Laplacian symbol and h the variant's drive term
/// evaluated on u^n:
///
///   u^{n+1} = [u^n + dt ((1/eps) K h - C1 K u^n + F[lambda (u0 - u^n)] + C2 u^n)]
///             / [1 + dt (C2 + eps K^2 - C1 K)]
///
/// Keeps the stage denominator, fidelity weights and transform buffers alive
/// between steps, so one instance per thread.
class Stepper {
 public:
  Stepper(const InpaintProblem& problem, const StepParams& params, const SpectralWorkspace& ws);

  /// Throws BlowUpError (iteration 0) when the result has non-finite samples.
  Field2D advance(const Field2D& u);

  const StepParams& params() const noexcept { return params_; }
  double min_denominator() const noexcept { return min_denominator_; }

 private:
  const InpaintProblem& problem_;
  const SpectralWorkspace& ws_;
  StepParams params_;
  Field2D lambda_;
  std::vector<double> denominator_;
  double min_denominator_ = 1.0;
  std::vector<Complex> u_hat_;
  std::vector<Complex> packed_;
};

/// One step from scratch; see Stepper.
Field2D step(const Field2D& u, const InpaintProblem& problem, const StepParams& params,
             const SpectralWorkspace& ws);

struct Stage {
  double epsilon = 1.0;
  long iterations = 1;
};

struct SolverConfig {
  double dt = 1.0;
  std::vector<Stage> stages;
  std::optional<double> c1;  // empty: auto_c1(epsilon) per stage
  std::optional<double> c2;  // empty: auto_c2(lambda0)
  NonlinearVariant variant = ShockFilter{};
  std::optional<double> residual_tol;
  long record_every = 100;
};

double auto_c1(double epsilon) noexcept;
double auto_c2(double lambda0) noexcept;

/// Throws InvalidArgument if the config cannot be run against a problem with
/// fidelity weight `lambda0` (an explicit c2 must exceed lambda0).
void validate(const SolverConfig& cfg, double lambda0);

StepParams stage_params(const SolverConfig& cfg, const Stage& stage, double lambda0);

struct DiagnosticsRecord {
  long iteration = 0;
  double epsilon = 0.0;
  std::optional<double> e1;  // only defined for the double-well variant
  double e2 = 0.0;
  double residual = 0.0;
  double mse_known = 0.0;
  std::optional<double> mse_unknown;  // needs ground truth
};

struct RunOptions {
  /// Ground truth for mse_unknown; may be null.
  const Field2D* truth = nullptr;
  /// Called after every step with the global iteration count.
  std::function<void(long iteration, double epsilon, const Field2D& u)> on_step;
  /// Called for every diagnostics record as it is produced.
  std::function<void(const DiagnosticsRecord&)> on_record;
};

struct RunResult {
  Field2D u;
  std::vector<DiagnosticsRecord> records;
  long iterations = 0;
};

/// Runs the staged schedule starting from u = u0.
///
/// Each stage continues from the previous stage's final field. A record is
/// taken at iteration 0, at every multiple of record_every and at the final
/// iteration. With residual_tol set, a stage ends as soon as
/// max|u^{n+1} - u^n| < residual_tol.
RunResult run(const InpaintProblem& problem, const SolverConfig& cfg,
              const RunOptions& options = {});

/// Ginzburg-Landau energy sum h^2 ((eps/2)|grad u|^2 + H(u)/eps) for the
/// double-well variant. The gradient part is evaluated by Parseval with the
/// Laplacian symbol. Throws InvalidArgument for the shock-filter variant,
/// which has no closed-form potential.
double energy_e1(const Field2D& u, double epsilon, const NonlinearVariant& variant,
                 const SpectralWorkspace& ws);

/// Fidelity energy (lambda0/2) h^2 sum over known pixels of (u0 - u)^2.
double energy_e2(const Field2D& u, const InpaintProblem& problem);

DiagnosticsRecord diagnose(const Field2D& u, const InpaintProblem& problem, double epsilon,
                           const NonlinearVariant& variant, const SpectralWorkspace& ws,
                           const Field2D* truth);

}  // namespace sfch
