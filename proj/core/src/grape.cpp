/* Copyright 2026 The catgrape Authors. All Rights Reserved.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at
    http://www.apache.org/licenses/LICENSE-2.0
Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "catgrape/grape.hpp"

#include <cmath>
#include <deque>
#include <random>

namespace catgrape {

void PenaltyWeights::validate() const {
  if (lambda_amplitude < 0 || lambda_derivative < 0 || lambda_discrepancy < 0)
    throw Error("PenaltyWeights: lambdas must be nonnegative");
  if (epsilon_max <= 0) throw Error("PenaltyWeights: epsilon_max must be positive");
}

void BandLimit::validate(double dt) const {
  const double nyquist = M_PI / dt;
  for (int drive = 0; drive < 2; ++drive) {
    if (!(omega_min(drive) < omega_max(drive)))
      throw Error("BandLimit: omega_min must be below omega_max");
    if (omega_min(drive) < -nyquist - 1e-12 || omega_max(drive) > nyquist + 1e-12)
      throw Error("BandLimit: band exceeds the Nyquist range +-pi/dt");
  }
}

Eigen::VectorXd frequency_grid(int n, double dt) {
  Eigen::VectorXd w(n);
  for (int j = 0; j < n; ++j) {
    const int s = (j < (n + 1) / 2) ? j : j - n;
    w(j) = 2.0 * M_PI * s / (n * dt);
  }
  return w;
}

Eigen::Array<bool, Eigen::Dynamic, 1> band_mask(int n, double dt, const BandLimit& band,
                                                int drive) {
  band.validate(dt);
  const Eigen::VectorXd w = frequency_grid(n, dt);
  Eigen::Array<bool, Eigen::Dynamic, 1> mask(n);
  for (int j = 0; j < n; ++j)
    mask(j) = w(j) >= band.omega_min(drive) && w(j) <= band.omega_max(drive);
  if (!mask.any()) throw Error("band_mask: empty band");
  return mask;
}

namespace {

constexpr Complex kI{0.0, 1.0};

// Unitary DFT twiddles: time(n) = (1/sqrt(N)) sum_j coeff(j) e^{+2 pi i j n / N}.
Matrix idft_matrix(int n) {
  Matrix m(n, n);
  const double scale = 1.0 / std::sqrt(double(n));
  for (int row = 0; row < n; ++row)
    for (int j = 0; j < n; ++j)
      m(row, j) = scale * std::exp(kI * (2.0 * M_PI * double(j) * double(row) / double(n)));
  return m;
}

}  // namespace

ControlWaveform band_project(const FreqControls& coeffs, const BandLimit& band, double dt) {
  const int n = static_cast<int>(coeffs.rows());
  if (n < 1) throw Error("band_project: empty coefficient vector");
  const Matrix a = idft_matrix(n);
  ControlWaveform w;
  w.dt = dt;
  w.samples.resize(n, 4);
  for (int drive = 0; drive < 2; ++drive) {
    const auto mask = band_mask(n, dt, band, drive);
    Vector masked = coeffs.col(drive);
    for (int j = 0; j < n; ++j)
      if (!mask(j)) masked(j) = 0.0;
    const Vector time = a * masked;
    w.samples.col(2 * drive) = time.real();
    w.samples.col(2 * drive + 1) = time.imag();
  }
  return w;
}

FreqControls time_to_freq(const ControlWaveform& waveform) {
  const int n = waveform.steps();
  const Matrix a = idft_matrix(n);
  FreqControls coeffs(n, 2);
  for (int drive = 0; drive < 2; ++drive) {
    Vector time(n);
    for (int k = 0; k < n; ++k)
      time(k) = Complex(waveform.samples(k, 2 * drive), waveform.samples(k, 2 * drive + 1));
    coeffs.col(drive) = a.adjoint() * time;
  }
  return coeffs;
}

PenaltyEval amplitude_penalty(const ControlWaveform& waveform, double epsilon_max) {
  if (epsilon_max <= 0) throw Error("amplitude_penalty: epsilon_max must be positive");
  const int n = waveform.steps();
  PenaltyEval out;
  out.gradient = Eigen::Matrix<double, Eigen::Dynamic, 4>::Zero(n, 4);
  for (int drive = 0; drive < 2; ++drive) {
    for (int k = 0; k < n; ++k) {
      const double re = waveform.samples(k, 2 * drive);
      const double im = waveform.samples(k, 2 * drive + 1);
      const double r = std::hypot(re, im);
      if (r > epsilon_max) {
        const double excess = r - epsilon_max;
        out.value += excess * excess;
        out.gradient(k, 2 * drive) = 2.0 * excess * re / r;
        out.gradient(k, 2 * drive + 1) = 2.0 * excess * im / r;
      }
    }
  }
  return out;
}

PenaltyEval derivative_penalty(const ControlWaveform& waveform) {
  const int n = waveform.steps();
  PenaltyEval out;
  out.gradient = Eigen::Matrix<double, Eigen::Dynamic, 4>::Zero(n, 4);
  for (int col = 0; col < 4; ++col) {
    for (int k = 0; k + 1 < n; ++k) {
      const double diff = waveform.samples(k + 1, col) - waveform.samples(k, col);
      out.value += diff * diff;
      out.gradient(k, col) -= 2.0 * diff;
      out.gradient(k + 1, col) += 2.0 * diff;
    }
  }
  return out;
}

DiscrepancyEval discrepancy_penalty(const Eigen::VectorXd& fidelities) {
  const int k = static_cast<int>(fidelities.size());
  DiscrepancyEval out;
  out.gradient = Eigen::VectorXd::Zero(k);
  if (k < 2) {
    out.warning = true;
    return out;
  }
  // Each unordered pair counted once; the factor relative to a directed sum
  // is absorbed into lambda_discrepancy.
  for (int a = 0; a < k; ++a) {
    for (int b = a + 1; b < k; ++b) {
      const double diff = fidelities(a) - fidelities(b);
      out.value += diff * diff;
      out.gradient(a) += 2.0 * diff;
      out.gradient(b) -= 2.0 * diff;
    }
  }
  return out;
}

std::vector<HilbertDims> OptimizationProblem::truncations() const {
  std::vector<HilbertDims> out;
  out.reserve(truncation_pads.size());
  for (int pad : truncation_pads) out.push_back({base_dims.n_osc + pad, base_dims.n_trans});
  return out;
}

void OptimizationProblem::validate() const {
  model.validate();
  base_dims.validate();
  penalties.validate();
  band.validate(dt);
  if (steps < 1) throw Error("OptimizationProblem: steps must be >= 1");
  if (dt <= 0) throw Error("OptimizationProblem: dt must be positive");
  if (truncation_pads.empty()) throw Error("OptimizationProblem: need at least one truncation");
  if (transfer_sets.size() != truncation_pads.size())
    throw Error("OptimizationProblem: one transfer set per truncation required");
  const auto truncs = truncations();
  for (std::size_t i = 0; i < transfer_sets.size(); ++i) {
    transfer_sets[i].validate();
    if (!(transfer_sets[i].dims == truncs[i]))
      throw Error("OptimizationProblem: transfer set dims do not match truncation");
    if (transfer_sets[i].size() != transfer_sets[0].size())
      throw Error("OptimizationProblem: transfer sets must have equal size across truncations");
  }
}

namespace {

// Cost evaluator with per-truncation operators built once.
class Evaluator {
 public:
  explicit Evaluator(const OptimizationProblem& problem) : problem_(problem) {
    problem.validate();
    for (const auto& dims : problem.truncations())
      systems_.push_back(SystemOperators::build(problem.model, dims));
  }

  CostEval operator()(const FreqControls& coeffs) const {
    const auto& p = problem_;
    CostEval eval;
    eval.waveform = band_project(coeffs, p.band, p.dt);

    const int n = p.steps;
    const int n_trunc = static_cast<int>(systems_.size());
    eval.fidelities.resize(n_trunc);
    std::vector<Eigen::Matrix<double, Eigen::Dynamic, 4>> fid_grads(n_trunc);
    for (int t = 0; t < n_trunc; ++t) {
      const auto cache = propagate(eval.waveform, p.transfer_sets[t], systems_[t]);
      eval.fidelities(t) = transfer_fidelity(cache);
      fid_grads[t] = fidelity_gradient(cache, systems_[t], eval.waveform);
    }

    const auto amp = amplitude_penalty(eval.waveform, p.penalties.epsilon_max);
    const auto der = derivative_penalty(eval.waveform);
    const auto disc = discrepancy_penalty(eval.fidelities);
    eval.amplitude_penalty = amp.value;
    eval.derivative_penalty = der.value;
    eval.discrepancy_penalty = disc.value;

    eval.cost = eval.fidelities.mean() - p.penalties.lambda_amplitude * amp.value -
                p.penalties.lambda_derivative * der.value -
                p.penalties.lambda_discrepancy * disc.value;

    Eigen::Matrix<double, Eigen::Dynamic, 4> time_grad =
        Eigen::Matrix<double, Eigen::Dynamic, 4>::Zero(n, 4);
    for (int t = 0; t < n_trunc; ++t) {
      const double weight =
          1.0 / n_trunc - p.penalties.lambda_discrepancy * disc.gradient(t);
      time_grad += weight * fid_grads[t];
    }
    time_grad -= p.penalties.lambda_amplitude * amp.gradient;
    time_grad -= p.penalties.lambda_derivative * der.gradient;

    // Chain rule through the unitary IDFT: with W_n = d cost/d Re eps_n
    // + i d cost/d Im eps_n, the frequency-domain gradient is the adjoint
    // transform of W, with out-of-band bins zeroed.
    eval.gradient = FreqControls::Zero(n, 2);
    ControlWaveform grad_wave;
    grad_wave.dt = p.dt;
    grad_wave.samples = time_grad;
    FreqControls freq_grad = time_to_freq(grad_wave);
    for (int drive = 0; drive < 2; ++drive) {
      const auto mask = band_mask(n, p.dt, p.band, drive);
      for (int j = 0; j < n; ++j)
        eval.gradient(j, drive) = mask(j) ? freq_grad(j, drive) : Complex(0.0);
    }
    return eval;
  }

  const OptimizationProblem& problem() const { return problem_; }

 private:
  const OptimizationProblem& problem_;
  std::vector<SystemOperators> systems_;
};

FreqControls make_seed(const OptimizationProblem& p, std::uint64_t seed) {
  const int n = p.steps;
  FreqControls coeffs = FreqControls::Zero(n, 2);
  switch (p.seed.kind) {
    case SeedSpec::Kind::Zero:
      break;
    case SeedSpec::Kind::Random: {
      std::mt19937_64 rng(seed);
      std::normal_distribution<double> normal(0.0, 1.0);
      for (int drive = 0; drive < 2; ++drive) {
        const auto mask = band_mask(n, p.dt, p.band, drive);
        const int n_band = static_cast<int>(mask.count());
        const double sigma = p.seed.amplitude * std::sqrt(double(n) / (2.0 * n_band));
        for (int j = 0; j < n; ++j) {
          const double re = normal(rng);
          const double im = normal(rng);
          if (mask(j)) coeffs(j, drive) = sigma * Complex(re, im);
        }
      }
      break;
    }
    case SeedSpec::Kind::Waveform: {
      if (p.seed.waveform.steps() != n || p.seed.waveform.dt != p.dt)
        throw Error("seed waveform grid does not match the problem grid");
      coeffs = time_to_freq(p.seed.waveform);
      break;
    }
  }
  return coeffs;
}

// Real view of the coefficient array: blocks [Re C, Im C, Re T, Im T].
Eigen::VectorXd to_real(const FreqControls& c) {
  const int n = static_cast<int>(c.rows());
  Eigen::VectorXd x(4 * n);
  x.segment(0, n) = c.col(0).real();
  x.segment(n, n) = c.col(0).imag();
  x.segment(2 * n, n) = c.col(1).real();
  x.segment(3 * n, n) = c.col(1).imag();
  return x;
}

FreqControls from_real(const Eigen::VectorXd& x) {
  const int n = static_cast<int>(x.size() / 4);
  FreqControls c(n, 2);
  c.col(0).real() = x.segment(0, n);
  c.col(0).imag() = x.segment(n, n);
  c.col(1).real() = x.segment(2 * n, n);
  c.col(1).imag() = x.segment(3 * n, n);
  return c;
}

}  // namespace

CostEval total_cost(const OptimizationProblem& problem, const FreqControls& coeffs) {
  return Evaluator(problem)(coeffs);
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::GoalReached: return "fidelity goal reached";
    case Termination::GradientConverged: return "gradient norm below tolerance";
    case Termination::MaxIterations: return "iteration limit reached";
    case Termination::LineSearchStall: return "line-search stall";
  }
  return "unknown";
}

OptimizationResult optimize(const OptimizationProblem& problem, const OptimizerConfig& config,
                            const std::function<void(int, const CostEval&)>& progress) {
  Evaluator evaluate(problem);

  OptimizationResult result;
  Eigen::VectorXd x = to_real(make_seed(problem, config.seed));
  CostEval eval = evaluate(from_real(x));
  result.evaluations = 1;
  result.cost_trace.push_back(eval.cost);
  if (progress) progress(0, eval);

  // Curvature history for the two-loop recursion (ascent on cost).
  std::deque<Eigen::VectorXd> s_hist, y_hist;

  auto finish = [&](Termination reason, int iter) {
    result.termination = reason;
    result.iterations = iter;
    result.waveform = eval.waveform;
    result.coefficients = from_real(x);
    result.fidelities = eval.fidelities;
    result.amplitude_penalty = eval.amplitude_penalty;
    result.derivative_penalty = eval.derivative_penalty;
    result.discrepancy_penalty = eval.discrepancy_penalty;
    result.cost = eval.cost;
    return result;
  };

  if (eval.mean_fidelity() >= config.fidelity_goal) return finish(Termination::GoalReached, 0);

  Eigen::VectorXd grad = to_real(eval.gradient);

  for (int iter = 1; iter <= config.max_iter; ++iter) {
    if (grad.lpNorm<Eigen::Infinity>() < config.grad_tol)
      return finish(Termination::GradientConverged, iter - 1);

    // Two-loop recursion for an ascent direction d ~ H grad.
    Eigen::VectorXd d = grad;
    std::vector<double> alpha(s_hist.size());
    for (int i = static_cast<int>(s_hist.size()) - 1; i >= 0; --i) {
      const double rho = 1.0 / y_hist[i].dot(s_hist[i]);
      alpha[i] = rho * s_hist[i].dot(d);
      d -= alpha[i] * y_hist[i];
    }
    if (!s_hist.empty()) {
      const double gamma =
          s_hist.back().dot(y_hist.back()) / y_hist.back().squaredNorm();
      d *= gamma;
    }
    for (std::size_t i = 0; i < s_hist.size(); ++i) {
      const double rho = 1.0 / y_hist[i].dot(s_hist[i]);
      const double beta = rho * y_hist[i].dot(d);
      d += (alpha[i] - beta) * s_hist[i];
    }

    double directional = grad.dot(d);
    if (directional <= 0) {  // not an ascent direction; reset to steepest ascent
      d = grad;
      directional = grad.squaredNorm();
      s_hist.clear();
      y_hist.clear();
    }

    // Armijo backtracking with sufficient-increase condition.
    const double c1 = 1e-4;
    double step = s_hist.empty() ? std::min(1.0, 1.0 / std::max(1e-12, grad.norm())) : 1.0;
    bool accepted = false;
    CostEval trial_eval;
    Eigen::VectorXd x_trial;
    for (int bt = 0; bt < 40; ++bt) {
      x_trial = x + step * d;
      trial_eval = evaluate(from_real(x_trial));
      ++result.evaluations;
      if (trial_eval.cost >= eval.cost + c1 * step * directional) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) return finish(Termination::LineSearchStall, iter - 1);

    Eigen::VectorXd grad_new = to_real(trial_eval.gradient);
    Eigen::VectorXd s = x_trial - x;
    Eigen::VectorXd y = grad - grad_new;  // gradient change of the negated cost
    if (y.dot(s) > 1e-12 * s.norm() * y.norm()) {
      s_hist.push_back(std::move(s));
      y_hist.push_back(std::move(y));
      if (static_cast<int>(s_hist.size()) > config.memory_m) {
        s_hist.pop_front();
        y_hist.pop_front();
      }
    }

    x = std::move(x_trial);
    eval = std::move(trial_eval);
    grad = std::move(grad_new);
    result.cost_trace.push_back(eval.cost);
    if (progress) progress(iter, eval);

    if (eval.mean_fidelity() >= config.fidelity_goal) return finish(Termination::GoalReached, iter);
  }
  return finish(Termination::MaxIterations, config.max_iter);
}

}  // namespace catgrape
