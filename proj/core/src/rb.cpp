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

#include "catgrape/rb.hpp"

#include <algorithm>
#include <cmath>

namespace catgrape {

namespace {

std::array<int, 9> to_key(const Eigen::Matrix3d& m) {
  std::array<int, 9> key{};
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      const double v = m(r, c);
      const int i = static_cast<int>(std::lround(v));
      if (std::abs(v - i) > 1e-9 || i < -1 || i > 1)
        throw Error("CliffordGroup: gate Bloch matrix is not a signed permutation");
      key[r * 3 + c] = i;
    }
  }
  return key;
}

std::array<int, 9> multiply(const std::array<int, 9>& a, const std::array<int, 9>& b) {
  std::array<int, 9> out{};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      int acc = 0;
      for (int k = 0; k < 3; ++k) acc += a[r * 3 + k] * b[k * 3 + c];
      out[r * 3 + c] = acc;
    }
  return out;
}

std::array<int, 9> transpose(const std::array<int, 9>& a) {
  std::array<int, 9> out{};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) out[r * 3 + c] = a[c * 3 + r];
  return out;
}

// Gate names in lexicographic order, the enumeration order that fixes
// decomposition tie-breaking.
std::vector<std::string> sorted_rb_names() {
  std::vector<std::string> names = GateSpec::rb_names();
  std::sort(names.begin(), names.end());
  return names;
}

}  // namespace

CliffordGroup::CliffordGroup() {
  // Identity is element 0 by construction.
  std::array<int, 9> id{1, 0, 0, 0, 1, 0, 0, 0, 1};
  elements_.push_back(id);
  index_[id] = 0;
  decompositions_.push_back({});

  const auto names = sorted_rb_names();
  std::map<std::string, std::array<int, 9>> gate_matrix;
  for (const auto& name : names) {
    const auto ptm = ptm_of_unitary(GateSpec::named(name).unitary);
    gate_matrix[name] = to_key(ptm.r.bottomRightCorner<3, 3>());
    generator_index_[name] = -1;  // filled below once indices are final
  }

  // Breadth-first closure over time-ordered words; the first word reaching
  // an element is its shortest, lexicographically smallest decomposition.
  std::vector<std::pair<std::array<int, 9>, std::vector<std::string>>> frontier = {
      {id, {}}};
  for (int depth = 1; depth <= 4 && elements_.size() < 24; ++depth) {
    std::vector<std::pair<std::array<int, 9>, std::vector<std::string>>> next;
    for (const auto& [mat, word] : frontier) {
      for (const auto& name : names) {
        // Appending gate g in time order multiplies from the left.
        const auto product = multiply(gate_matrix[name], mat);
        auto new_word = word;
        new_word.push_back(name);
        if (!index_.count(product)) {
          index_[product] = static_cast<int>(elements_.size());
          elements_.push_back(product);
          decompositions_.push_back(new_word);
        }
        next.emplace_back(product, std::move(new_word));
      }
    }
    frontier = std::move(next);
  }
  if (elements_.size() != 24)
    throw Error("CliffordGroup: generator closure has " + std::to_string(elements_.size()) +
                " elements, expected 24");
  for (std::size_t i = 0; i < decompositions_.size(); ++i)
    if (decompositions_[i].size() > 3)
      throw Error("CliffordGroup: element needs more than 3 generator gates");
  for (const auto& name : names) generator_index_[name] = index_.at(gate_matrix[name]);
}

const CliffordGroup& CliffordGroup::instance() {
  static const CliffordGroup group;
  return group;
}

int CliffordGroup::element_of(const std::string& gate_name) const {
  const auto it = generator_index_.find(gate_name);
  if (it == generator_index_.end()) throw Error("CliffordGroup: unknown gate " + gate_name);
  return it->second;
}

int CliffordGroup::compose(int after, int before) const {
  return index_.at(multiply(elements_.at(after), elements_.at(before)));
}

int CliffordGroup::inverse(int element) const {
  return index_.at(transpose(elements_.at(element)));
}

const std::vector<std::string>& CliffordGroup::decomposition(int element) const {
  return decompositions_.at(element);
}

Eigen::Matrix3d CliffordGroup::bloch(int element) const {
  Eigen::Matrix3d m;
  const auto& key = elements_.at(element);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m(r, c) = key[r * 3 + c];
  return m;
}

RbSequence sample_sequence(int length, std::mt19937_64& rng) {
  if (length < 1) throw Error("sample_sequence: length must be >= 1");
  const auto& group = CliffordGroup::instance();
  const auto& names = GateSpec::rb_names();
  std::uniform_int_distribution<int> pick(0, static_cast<int>(names.size()) - 1);

  RbSequence seq;
  int total = group.identity();
  for (int i = 0; i < length; ++i) {
    const std::string& name = names[pick(rng)];
    seq.gates.push_back(name);
    total = group.compose(group.element_of(name), total);
  }
  seq.correction = group.decomposition(group.inverse(total));
  return seq;
}

void GateChannelSet::validate() const {
  for (const auto& name : GateSpec::rb_names()) {
    const auto it = channels.find(name);
    if (it == channels.end()) throw Error("GateChannelSet: missing channel for " + name);
    if (!it->second.trace_preserving(1e-6))
      throw Error("GateChannelSet: channel " + name + " is not trace-preserving");
  }
}

GateChannelSet GateChannelSet::ideal() {
  GateChannelSet set;
  for (const auto& name : GateSpec::rb_names())
    set.channels[name] = ptm_of_unitary(GateSpec::named(name).unitary);
  return set;
}

GateChannelSet GateChannelSet::depolarizing(double p) {
  GateChannelSet set = ideal();
  Eigen::Matrix4d noise = Eigen::Matrix4d::Identity();
  noise(1, 1) = noise(2, 2) = noise(3, 3) = 1.0 - p;
  for (auto& [name, ptm] : set.channels) ptm.r = noise * ptm.r;
  return set;
}

namespace {

// Time-ordered gate list of one full sequence realization, and the ideal
// Bloch Z expectation of the survived state (always +1 by construction,
// asserted through the group table).
std::vector<std::string> full_gate_list(const RbSequence& seq, const std::string& interleave) {
  std::vector<std::string> gates;
  for (const auto& g : seq.gates) {
    gates.push_back(g);
    if (!interleave.empty()) gates.push_back(interleave);
  }
  gates.insert(gates.end(), seq.correction.begin(), seq.correction.end());
  return gates;
}

RbSequence sample_with_interleave(int length, std::mt19937_64& rng,
                                  const std::string& interleave) {
  const auto& group = CliffordGroup::instance();
  RbSequence seq;
  if (interleave.empty()) {
    seq = sample_sequence(length, rng);
  } else {
    const auto& names = GateSpec::rb_names();
    std::uniform_int_distribution<int> pick(0, static_cast<int>(names.size()) - 1);
    int total = group.identity();
    for (int i = 0; i < length; ++i) {
      const std::string& name = names[pick(rng)];
      seq.gates.push_back(name);
      total = group.compose(group.element_of(name), total);
      total = group.compose(group.element_of(interleave), total);
    }
    seq.correction = group.decomposition(group.inverse(total));
  }
  return seq;
}

double ptm_success_probability(const GateChannelSet& channels,
                               const std::vector<std::string>& gates) {
  Eigen::Vector4d state(1.0, 0.0, 0.0, 1.0);  // logical |+Z>
  for (const auto& name : gates) state = channels.channels.at(name).r * state;
  return 0.5 * (1.0 + state(3));
}

}  // namespace

RBResult run_rb(const GateChannelSet& channels, const RbConfig& config) {
  channels.validate();
  if (!config.interleave.empty()) GateSpec::named(config.interleave);

  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const int n_lengths = static_cast<int>(config.lengths.size());
  RBResult result;
  result.lengths.resize(n_lengths);
  result.p.resize(n_lengths);
  result.stderr_p.resize(n_lengths);
  result.shots = config.shots;

  for (int li = 0; li < n_lengths; ++li) {
    const int length = config.lengths[li];
    result.lengths(li) = length;
    if (config.shots > 0) {
      int successes = 0;
      for (int s = 0; s < config.shots; ++s) {
        const auto seq = sample_with_interleave(length, rng, config.interleave);
        const double p = ptm_success_probability(channels, full_gate_list(seq, config.interleave));
        if (unit(rng) < p) ++successes;
      }
      const double p_hat = double(successes) / config.shots;
      result.p(li) = p_hat;
      result.stderr_p(li) = std::sqrt(std::max(0.0, p_hat * (1.0 - p_hat) / config.shots));
    } else {
      Eigen::VectorXd ps(config.sequences);
      for (int s = 0; s < config.sequences; ++s) {
        const auto seq = sample_with_interleave(length, rng, config.interleave);
        ps(s) = ptm_success_probability(channels, full_gate_list(seq, config.interleave));
      }
      result.p(li) = ps.mean();
      const double var = (ps.array() - ps.mean()).square().sum() /
                         std::max(1, config.sequences - 1);
      result.stderr_p(li) = std::sqrt(var / config.sequences);
    }
  }
  return result;
}

RBResult run_rb_lindblad(const PulseSet& pulses, const SystemOperators& sys,
                         const DecoherenceSpec& dec, const RbConfig& config,
                         const LindbladOptions& options) {
  for (const auto& name : GateSpec::rb_names())
    if (!pulses.gates.count(name)) throw Error("run_rb_lindblad: missing pulse for " + name);
  if (!config.interleave.empty() && !pulses.gates.count(config.interleave))
    throw Error("run_rb_lindblad: missing pulse for interleaved gate");

  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const HilbertDims& dims = sys.dims;

  // Transmon ground-state projector for the success readout.
  Eigen::VectorXd ground_mask = Eigen::VectorXd::Zero(dims.joint());
  for (int n = 0; n < dims.n_osc; ++n) ground_mask(n * dims.n_trans + 0) = 1.0;

  const Vector start = fock_state(0, 0, dims);
  const Matrix rho_start = start * start.adjoint();

  auto run_one = [&](const RbSequence& seq) {
    Matrix rho = evolve_density(rho_start, pulses.encode, sys, dec, options);
    for (const auto& name : full_gate_list(seq, config.interleave))
      rho = evolve_density(rho, pulses.gates.at(name), sys, dec, options);
    rho = evolve_density(rho, pulses.decode, sys, dec, options);
    double p_ground = 0.0;
    for (int i = 0; i < dims.joint(); ++i) p_ground += ground_mask(i) * rho(i, i).real();
    return std::clamp(p_ground, 0.0, 1.0);
  };

  const int n_lengths = static_cast<int>(config.lengths.size());
  RBResult result;
  result.lengths.resize(n_lengths);
  result.p.resize(n_lengths);
  result.stderr_p.resize(n_lengths);
  result.shots = config.shots;

  for (int li = 0; li < n_lengths; ++li) {
    const int length = config.lengths[li];
    result.lengths(li) = length;
    const int reps = config.shots > 0 ? config.shots : config.sequences;
    Eigen::VectorXd ps(reps);
    for (int s = 0; s < reps; ++s) {
      const auto seq = sample_with_interleave(length, rng, config.interleave);
      const double p = run_one(seq);
      ps(s) = config.shots > 0 ? (unit(rng) < p ? 1.0 : 0.0) : p;
    }
    result.p(li) = ps.mean();
    const double var = (ps.array() - ps.mean()).square().sum() / std::max(1, reps - 1);
    result.stderr_p(li) = std::sqrt(var / reps);
  }
  return result;
}

DecayFit fit_decay(const RBResult& result) {
  const int m = static_cast<int>(result.lengths.size());
  if (m < 3) throw Error("fit_decay: need at least 3 sequence lengths");

  const Eigen::VectorXd n = result.lengths.cast<double>();
  const Eigen::VectorXd y = result.p.array() - 0.5;

  // Log-linear initialization over points clearly above the 0.5 floor.
  double sum_n = 0, sum_n2 = 0, sum_ly = 0, sum_nly = 0;
  int usable = 0;
  for (int i = 0; i < m; ++i) {
    if (y(i) > 1e-6) {
      const double ly = std::log(y(i));
      sum_n += n(i);
      sum_n2 += n(i) * n(i);
      sum_ly += ly;
      sum_nly += n(i) * ly;
      ++usable;
    }
  }

  DecayFit fit;
  auto sentinel = [&](double amplitude) {
    fit.amplitude = amplitude;
    fit.tau = std::numeric_limits<double>::infinity();
    fit.decaying = false;
    fit.residuals = y.array() - amplitude;
    return fit;
  };
  if (usable < 2) return sentinel(y.mean());

  const double det = usable * sum_n2 - sum_n * sum_n;
  double slope = det != 0.0 ? (usable * sum_nly - sum_n * sum_ly) / det : 0.0;
  double intercept = (sum_ly - slope * sum_n) / usable;
  if (slope >= -1e-12) return sentinel(y.mean());

  // Levenberg-Marquardt on (A, k), model y = A exp(-k n).
  double a = std::exp(intercept);
  double k = -slope;
  double lambda = 1e-3;
  auto rss = [&](double aa, double kk) {
    return (y.array() - aa * (-kk * n.array()).exp()).square().sum();
  };
  double current = rss(a, k);
  for (int iter = 0; iter < 100; ++iter) {
    const Eigen::ArrayXd e = (-k * n.array()).exp();
    const Eigen::ArrayXd r = y.array() - a * e;
    Eigen::Matrix2d jtj;
    Eigen::Vector2d jtr;
    const Eigen::ArrayXd da = e;
    const Eigen::ArrayXd dk = -a * n.array() * e;
    jtj(0, 0) = (da * da).sum();
    jtj(0, 1) = jtj(1, 0) = (da * dk).sum();
    jtj(1, 1) = (dk * dk).sum();
    jtr(0) = (da * r).sum();
    jtr(1) = (dk * r).sum();

    Eigen::Matrix2d damped = jtj;
    damped(0, 0) *= 1.0 + lambda;
    damped(1, 1) *= 1.0 + lambda;
    const Eigen::Vector2d delta = damped.ldlt().solve(jtr);
    const double a_new = a + delta(0);
    const double k_new = k + delta(1);
    const double next = (k_new > 0 && a_new > 0) ? rss(a_new, k_new) : current + 1.0;
    if (next < current) {
      a = a_new;
      k = k_new;
      lambda = std::max(1e-12, lambda * 0.3);
      if (current - next < 1e-15 * (1.0 + current)) {
        current = next;
        break;
      }
      current = next;
    } else {
      lambda *= 10.0;
      if (lambda > 1e12) break;
    }
  }

  fit.amplitude = a;
  fit.tau = 1.0 / k;
  fit.decaying = true;
  fit.residuals = (y.array() - a * (-k * n.array()).exp()).matrix();

  // Covariance over (A, tau) from the Jacobian at the optimum, scaled by the
  // residual variance; d tau / d k = -1/k^2.
  const Eigen::ArrayXd e = (-k * n.array()).exp();
  Eigen::Matrix2d jtj;
  jtj(0, 0) = (e * e).sum();
  jtj(0, 1) = jtj(1, 0) = (e * (-a * n.array() * e)).sum();
  jtj(1, 1) = ((a * n.array() * e) * (a * n.array() * e)).sum();
  const double dof = std::max(1, m - 2);
  const double sigma2 = current / dof;
  Eigen::Matrix2d cov_ak = sigma2 * jtj.inverse();
  Eigen::Matrix2d jac = Eigen::Matrix2d::Identity();
  jac(1, 1) = -1.0 / (k * k);
  fit.covariance = jac * cov_ak * jac.transpose();
  return fit;
}

double rb_error(double tau_rb) {
  if (!(tau_rb > 0)) throw Error("rb_error: tau must be positive");
  return 0.5 * (1.0 - std::exp(-1.0 / tau_rb));
}

double irb_error(double tau_gate, double tau_rb) {
  if (!(tau_gate > 0) || !(tau_rb > 0)) throw Error("irb_error: taus must be positive");
  return 0.5 * (1.0 - std::exp(1.0 / tau_rb - 1.0 / tau_gate));
}

}  // namespace catgrape
