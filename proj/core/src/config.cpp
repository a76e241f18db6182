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

#include "catgrape/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "catgrape/catcode.hpp"

namespace catgrape {

namespace {

struct Entry {
  std::string value;
  int line = 0;
  bool used = false;
};

// section -> key -> entry
using Tree = std::map<std::string, std::map<std::string, Entry>>;

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

Tree tokenize(const std::string& text) {
  Tree tree;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("unterminated section header", line_no);
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) throw ConfigError("empty section name", line_no);
      tree[section];  // a section may be present but empty
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("expected key = value", line_no);
    if (section.empty()) throw ConfigError("key outside of any [section]", line_no);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("empty key", line_no);
    if (tree[section].count(key)) throw ConfigError("duplicate key '" + key + "'", line_no);
    tree[section][key] = Entry{value, line_no, false};
  }
  return tree;
}

class Reader {
 public:
  explicit Reader(Tree tree) : tree_(std::move(tree)) {}

  bool has(const std::string& section, const std::string& key) {
    auto s = tree_.find(section);
    return s != tree_.end() && s->second.count(key);
  }

  std::string get_string(const std::string& section, const std::string& key) {
    Entry& e = entry(section, key);
    e.used = true;
    return e.value;
  }

  std::string get_string_or(const std::string& section, const std::string& key,
                            const std::string& fallback) {
    return has(section, key) ? get_string(section, key) : fallback;
  }

  double get_double(const std::string& section, const std::string& key) {
    Entry& e = entry(section, key);
    e.used = true;
    try {
      std::size_t pos = 0;
      const double v = std::stod(e.value, &pos);
      if (pos != e.value.size()) throw std::invalid_argument("trailing characters");
      return v;
    } catch (const std::exception&) {
      throw ConfigError("key '" + key + "': expected a number, got '" + e.value + "'", e.line);
    }
  }

  double get_double_or(const std::string& section, const std::string& key, double fallback) {
    return has(section, key) ? get_double(section, key) : fallback;
  }

  long long get_int(const std::string& section, const std::string& key) {
    Entry& e = entry(section, key);
    const double v = get_double(section, key);
    if (v != std::floor(v))
      throw ConfigError("key '" + key + "': expected an integer", e.line);
    return static_cast<long long>(v);
  }

  long long get_int_or(const std::string& section, const std::string& key, long long fallback) {
    return has(section, key) ? get_int(section, key) : fallback;
  }

  bool get_bool_or(const std::string& section, const std::string& key, bool fallback) {
    if (!has(section, key)) return fallback;
    Entry& e = entry(section, key);
    e.used = true;
    if (e.value == "true" || e.value == "1") return true;
    if (e.value == "false" || e.value == "0") return false;
    throw ConfigError("key '" + key + "': expected true or false", e.line);
  }

  std::vector<int> get_int_list(const std::string& section, const std::string& key) {
    Entry& e = entry(section, key);
    e.used = true;
    std::vector<int> out;
    std::istringstream in(e.value);
    std::string item;
    while (std::getline(in, item, ',')) {
      item = trim(item);
      try {
        std::size_t pos = 0;
        out.push_back(std::stoi(item, &pos));
        if (pos != item.size()) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': expected a comma-separated integer list", e.line);
      }
    }
    if (out.empty()) throw ConfigError("key '" + key + "': empty list", e.line);
    return out;
  }

  int require_line(const std::string& section, const std::string& key) {
    return entry(section, key).line;
  }

  void require(const std::string& section, const std::string& key) {
    if (!has(section, key))
      throw ConfigError("missing required key '" + key + "' in section [" + section + "]");
  }

  void reject_unknown() const {
    for (const auto& [section, keys] : tree_) {
      if (!known_sections_.count(section))
        throw ConfigError("unknown section [" + section + "]",
                          keys.empty() ? 0 : keys.begin()->second.line);
      for (const auto& [key, e] : keys)
        if (!e.used) throw ConfigError("unknown key '" + key + "' in section [" + section + "]",
                                       e.line);
    }
  }

  void mark_section_known(const std::string& section) { known_sections_.insert(section); }

 private:
  Entry& entry(const std::string& section, const std::string& key) {
    auto s = tree_.find(section);
    if (s == tree_.end() || !s->second.count(key))
      throw ConfigError("missing required key '" + key + "' in section [" + section + "]");
    return s->second.at(key);
  }

  Tree tree_;
  std::set<std::string> known_sections_;
};

TargetSpec::Kind parse_target_kind(const std::string& kind, int line) {
  if (kind == "gate") return TargetSpec::Kind::Gate;
  if (kind == "fock") return TargetSpec::Kind::Fock;
  if (kind == "encode") return TargetSpec::Kind::Encode;
  if (kind == "decode") return TargetSpec::Kind::Decode;
  if (kind == "parity") return TargetSpec::Kind::Parity;
  if (kind == "kerr_correct") return TargetSpec::Kind::KerrCorrect;
  throw ConfigError("unknown target kind '" + kind + "'", line);
}

std::string target_kind_name(TargetSpec::Kind kind) {
  switch (kind) {
    case TargetSpec::Kind::Gate: return "gate";
    case TargetSpec::Kind::Fock: return "fock";
    case TargetSpec::Kind::Encode: return "encode";
    case TargetSpec::Kind::Decode: return "decode";
    case TargetSpec::Kind::Parity: return "parity";
    case TargetSpec::Kind::KerrCorrect: return "kerr_correct";
  }
  return "?";
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string TargetSpec::describe() const {
  switch (kind) {
    case Kind::Gate: return "gate:" + gate;
    case Kind::Fock: return "fock:" + std::to_string(fock_n);
    case Kind::Encode: return "encode";
    case Kind::Decode: return "decode";
    case Kind::Parity: return "parity:" + std::to_string(parity_probes);
    case Kind::KerrCorrect: return "kerr_correct:" + fmt(ns_to_us(delta_t)) + "us";
  }
  return "?";
}

ExperimentConfig parse_config(const std::string& text) {
  Reader r(tokenize(text));
  ExperimentConfig c;

  r.mark_section_known("model");
  for (const char* key : {"chi_mhz", "t1_trans_us", "tphi_trans_us", "t1_osc_us"})
    r.require("model", key);
  c.model = HamiltonianModel::from_linear_units(
      r.get_double("model", "chi_mhz"), r.get_double_or("model", "kerr_mhz", 0.0),
      r.get_double_or("model", "anh_mhz", 0.0), r.get_double_or("model", "chi_prime_mhz", 0.0),
      r.get_double("model", "t1_trans_us"), r.get_double("model", "tphi_trans_us"),
      r.get_double("model", "t1_osc_us"), r.get_double_or("model", "omega_t_mhz", 0.0),
      r.get_double_or("model", "omega_c_mhz", 0.0));
  if (c.model.t1_trans <= 0 || c.model.tphi_trans <= 0 || c.model.t1_osc <= 0)
    throw ConfigError("decoherence times must be positive",
                      r.require_line("model", "t1_trans_us"));

  r.mark_section_known("target");
  r.require("target", "kind");
  const int kind_line = r.require_line("target", "kind");
  c.target.kind = parse_target_kind(r.get_string("target", "kind"), kind_line);
  c.target.alpha = r.get_double_or("target", "alpha", std::sqrt(3.0));
  switch (c.target.kind) {
    case TargetSpec::Kind::Gate: {
      r.require("target", "gate");
      c.target.gate = r.get_string("target", "gate");
      const auto& names = GateSpec::all_names();
      if (std::find(names.begin(), names.end(), c.target.gate) == names.end())
        throw ConfigError("unknown gate '" + c.target.gate + "'",
                          r.require_line("target", "gate"));
      break;
    }
    case TargetSpec::Kind::Fock:
      r.require("target", "fock_n");
      c.target.fock_n = static_cast<int>(r.get_int("target", "fock_n"));
      if (c.target.fock_n < 0)
        throw ConfigError("fock_n must be nonnegative", r.require_line("target", "fock_n"));
      break;
    case TargetSpec::Kind::KerrCorrect:
      r.require("target", "delta_t_us");
      c.target.delta_t = us_to_ns(r.get_double("target", "delta_t_us"));
      if (c.target.delta_t < 0)
        throw ConfigError("delta_t_us must be nonnegative",
                          r.require_line("target", "delta_t_us"));
      break;
    case TargetSpec::Kind::Parity:
      c.target.parity_probes = static_cast<int>(r.get_int_or("target", "parity_probes", 6));
      break;
    default:
      break;
  }

  r.mark_section_known("pulse");
  r.require("pulse", "steps");
  c.steps = static_cast<int>(r.get_int("pulse", "steps"));
  c.dt = r.get_double_or("pulse", "dt_ns", 2.0);
  if (c.steps < 1) throw ConfigError("steps must be >= 1", r.require_line("pulse", "steps"));
  if (c.dt <= 0) throw ConfigError("dt_ns must be positive", r.require_line("pulse", "dt_ns"));

  r.mark_section_known("truncation");
  r.require("truncation", "n_osc");
  c.base_dims.n_osc = static_cast<int>(r.get_int("truncation", "n_osc"));
  c.base_dims.n_trans = static_cast<int>(r.get_int_or("truncation", "n_trans", 2));
  if (r.has("truncation", "pads")) c.truncation_pads = r.get_int_list("truncation", "pads");

  r.mark_section_known("penalties");
  c.penalties.lambda_amplitude = r.get_double_or("penalties", "lambda_amplitude", 1e4);
  c.penalties.lambda_derivative = r.get_double_or("penalties", "lambda_derivative", 1e-3);
  c.penalties.lambda_discrepancy = r.get_double_or("penalties", "lambda_discrepancy", 1.0);
  c.penalties.epsilon_max =
      mhz_to_rad_ns(r.get_double_or("penalties", "epsilon_max_mhz", 10.0));

  r.mark_section_known("band");
  c.band.omega_min_c = mhz_to_rad_ns(r.get_double_or("band", "c_min_mhz", -20.0));
  c.band.omega_max_c = mhz_to_rad_ns(r.get_double_or("band", "c_max_mhz", 20.0));
  c.band.omega_min_t = mhz_to_rad_ns(r.get_double_or("band", "t_min_mhz", -20.0));
  c.band.omega_max_t = mhz_to_rad_ns(r.get_double_or("band", "t_max_mhz", 20.0));

  r.mark_section_known("optimizer");
  c.optimizer.max_iter = static_cast<int>(r.get_int_or("optimizer", "max_iter", 2000));
  c.optimizer.grad_tol = r.get_double_or("optimizer", "grad_tol", 1e-9);
  c.optimizer.fidelity_goal = r.get_double_or("optimizer", "fidelity_goal", 0.999);
  c.optimizer.memory_m = static_cast<int>(r.get_int_or("optimizer", "memory", 10));
  c.optimizer.seed = static_cast<std::uint64_t>(r.get_int_or("optimizer", "seed", 0));
  c.seed_amplitude = r.get_double_or("optimizer", "seed_amplitude_rad_ns", 1e-3);
  c.seed_zero = r.get_bool_or("optimizer", "seed_zero", false);

  r.mark_section_known("simulate");
  c.lindblad.substeps_per_sample =
      static_cast<int>(r.get_int_or("simulate", "substeps", 4));
  c.lindblad.superoperator_mode = r.get_bool_or("simulate", "superoperator_mode", false);

  r.mark_section_known("wigner");
  c.wigner.extent = r.get_double_or("wigner", "extent", 4.0);
  c.wigner.points_per_side = static_cast<int>(r.get_int_or("wigner", "points", 41));
  c.wigner.reconstruct_n_max = static_cast<int>(r.get_int_or("wigner", "reconstruct_n_max", 0));

  r.mark_section_known("rb");
  const std::string mode = r.get_string_or("rb", "mode", "ptm");
  if (mode == "ptm")
    c.rb.mode = RbSettings::Mode::Ptm;
  else if (mode == "lindblad")
    c.rb.mode = RbSettings::Mode::Lindblad;
  else
    throw ConfigError("rb mode must be ptm or lindblad", r.require_line("rb", "mode"));
  if (r.has("rb", "lengths")) c.rb.lengths = r.get_int_list("rb", "lengths");
  c.rb.shots = static_cast<int>(r.get_int_or("rb", "shots", 2000));
  c.rb.sequences = static_cast<int>(r.get_int_or("rb", "sequences", 8));
  c.rb.interleave = r.get_string_or("rb", "interleave", "");
  c.rb.depolarizing_p = r.get_double_or("rb", "depolarizing_p", -1.0);
  c.rb.waveform_dir = r.get_string_or("rb", "waveform_dir", "");

  r.mark_section_known("correction");
  c.dispersion_b = r.get_double_or("correction", "b", 0.0);
  c.dispersion_tau = r.get_double_or("correction", "tau_ns", 0.0);

  r.mark_section_known("output");
  c.out_dir = r.get_string_or("output", "dir", "out");

  r.reject_unknown();
  c.validate();
  return c;
}

ExperimentConfig parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

void ExperimentConfig::validate() const {
  model.validate();
  base_dims.validate();
  penalties.validate();
  band.validate(dt);
  if (steps < 1) throw ConfigError("pulse steps must be >= 1");
  if (truncation_pads.empty()) throw ConfigError("need at least one truncation pad");
  if (target.kind == TargetSpec::Kind::Fock && target.fock_n >= base_dims.n_osc)
    throw ConfigError("fock_n must be below the base oscillator truncation");
  if (wigner.points_per_side < 2) throw ConfigError("wigner points must be >= 2");
  for (int len : rb.lengths)
    if (len < 1) throw ConfigError("rb lengths must be >= 1");
  if (seed_amplitude < 0) throw ConfigError("seed amplitude must be nonnegative");
}

OptimizationProblem ExperimentConfig::make_problem() const {
  OptimizationProblem p;
  p.model = model;
  p.base_dims = base_dims;
  p.truncation_pads = truncation_pads;
  p.penalties = penalties;
  p.band = band;
  p.steps = steps;
  p.dt = dt;
  p.seed.kind = seed_zero ? SeedSpec::Kind::Zero : SeedSpec::Kind::Random;
  p.seed.amplitude = seed_amplitude;

  for (const auto& dims : p.truncations()) {
    switch (target.kind) {
      case TargetSpec::Kind::Fock:
        p.transfer_sets.push_back(fock_preparation_set(target.fock_n, dims));
        break;
      case TargetSpec::Kind::Gate:
        p.transfer_sets.push_back(
            gate_transfer_set(LogicalBasis::make(target.alpha, dims), GateSpec::named(target.gate)));
        break;
      case TargetSpec::Kind::Encode:
        p.transfer_sets.push_back(encode_transfer_set(LogicalBasis::make(target.alpha, dims)));
        break;
      case TargetSpec::Kind::Decode:
        p.transfer_sets.push_back(decode_transfer_set(LogicalBasis::make(target.alpha, dims)));
        break;
      case TargetSpec::Kind::Parity:
        p.transfer_sets.push_back(
            parity_map_set(fock_parity_probes(target.parity_probes, dims), dims));
        break;
      case TargetSpec::Kind::KerrCorrect:
        p.transfer_sets.push_back(
            kerr_correction_set(target.delta_t, model, LogicalBasis::make(target.alpha, dims)));
        break;
    }
  }
  p.validate();
  return p;
}

std::string serialize_config(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "[model]\n";
  out << "chi_mhz = " << fmt(rad_ns_to_mhz(c.model.chi)) << "\n";
  out << "kerr_mhz = " << fmt(rad_ns_to_mhz(c.model.kerr)) << "\n";
  out << "anh_mhz = " << fmt(rad_ns_to_mhz(c.model.anh)) << "\n";
  out << "chi_prime_mhz = " << fmt(rad_ns_to_mhz(c.model.chi_prime)) << "\n";
  out << "t1_trans_us = " << fmt(ns_to_us(c.model.t1_trans)) << "\n";
  out << "tphi_trans_us = " << fmt(ns_to_us(c.model.tphi_trans)) << "\n";
  out << "t1_osc_us = " << fmt(ns_to_us(c.model.t1_osc)) << "\n";
  out << "omega_t_mhz = " << fmt(rad_ns_to_mhz(c.model.omega_t)) << "\n";
  out << "omega_c_mhz = " << fmt(rad_ns_to_mhz(c.model.omega_c)) << "\n";

  out << "\n[target]\n";
  out << "kind = " << target_kind_name(c.target.kind) << "\n";
  out << "alpha = " << fmt(c.target.alpha) << "\n";
  switch (c.target.kind) {
    case TargetSpec::Kind::Gate: out << "gate = " << c.target.gate << "\n"; break;
    case TargetSpec::Kind::Fock: out << "fock_n = " << c.target.fock_n << "\n"; break;
    case TargetSpec::Kind::KerrCorrect:
      out << "delta_t_us = " << fmt(ns_to_us(c.target.delta_t)) << "\n";
      break;
    case TargetSpec::Kind::Parity:
      out << "parity_probes = " << c.target.parity_probes << "\n";
      break;
    default: break;
  }

  out << "\n[pulse]\n";
  out << "steps = " << c.steps << "\n";
  out << "dt_ns = " << fmt(c.dt) << "\n";

  out << "\n[truncation]\n";
  out << "n_osc = " << c.base_dims.n_osc << "\n";
  out << "n_trans = " << c.base_dims.n_trans << "\n";
  out << "pads = ";
  for (std::size_t i = 0; i < c.truncation_pads.size(); ++i)
    out << (i ? "," : "") << c.truncation_pads[i];
  out << "\n";

  out << "\n[penalties]\n";
  out << "lambda_amplitude = " << fmt(c.penalties.lambda_amplitude) << "\n";
  out << "lambda_derivative = " << fmt(c.penalties.lambda_derivative) << "\n";
  out << "lambda_discrepancy = " << fmt(c.penalties.lambda_discrepancy) << "\n";
  out << "epsilon_max_mhz = " << fmt(rad_ns_to_mhz(c.penalties.epsilon_max)) << "\n";

  out << "\n[band]\n";
  out << "c_min_mhz = " << fmt(rad_ns_to_mhz(c.band.omega_min_c)) << "\n";
  out << "c_max_mhz = " << fmt(rad_ns_to_mhz(c.band.omega_max_c)) << "\n";
  out << "t_min_mhz = " << fmt(rad_ns_to_mhz(c.band.omega_min_t)) << "\n";
  out << "t_max_mhz = " << fmt(rad_ns_to_mhz(c.band.omega_max_t)) << "\n";

  out << "\n[optimizer]\n";
  out << "max_iter = " << c.optimizer.max_iter << "\n";
  out << "grad_tol = " << fmt(c.optimizer.grad_tol) << "\n";
  out << "fidelity_goal = " << fmt(c.optimizer.fidelity_goal) << "\n";
  out << "memory = " << c.optimizer.memory_m << "\n";
  out << "seed = " << c.optimizer.seed << "\n";
  out << "seed_amplitude_rad_ns = " << fmt(c.seed_amplitude) << "\n";
  out << "seed_zero = " << (c.seed_zero ? "true" : "false") << "\n";

  out << "\n[simulate]\n";
  out << "substeps = " << c.lindblad.substeps_per_sample << "\n";
  out << "superoperator_mode = " << (c.lindblad.superoperator_mode ? "true" : "false") << "\n";

  out << "\n[wigner]\n";
  out << "extent = " << fmt(c.wigner.extent) << "\n";
  out << "points = " << c.wigner.points_per_side << "\n";
  out << "reconstruct_n_max = " << c.wigner.reconstruct_n_max << "\n";

  out << "\n[rb]\n";
  out << "mode = " << (c.rb.mode == RbSettings::Mode::Ptm ? "ptm" : "lindblad") << "\n";
  out << "lengths = ";
  for (std::size_t i = 0; i < c.rb.lengths.size(); ++i) out << (i ? "," : "") << c.rb.lengths[i];
  out << "\n";
  out << "shots = " << c.rb.shots << "\n";
  out << "sequences = " << c.rb.sequences << "\n";
  if (!c.rb.interleave.empty()) out << "interleave = " << c.rb.interleave << "\n";
  if (c.rb.depolarizing_p >= 0.0)
    out << "depolarizing_p = " << fmt(c.rb.depolarizing_p) << "\n";
  if (!c.rb.waveform_dir.empty()) out << "waveform_dir = " << c.rb.waveform_dir.string() << "\n";

  out << "\n[correction]\n";
  out << "b = " << fmt(c.dispersion_b) << "\n";
  out << "tau_ns = " << fmt(c.dispersion_tau) << "\n";

  out << "\n[output]\n";
  out << "dir = " << c.out_dir << "\n";
  return out.str();
}

std::uint64_t model_hash(const HamiltonianModel& m) {
  std::string blob;
  for (double v : {m.chi, m.kerr, m.anh, m.chi_prime, m.t1_trans, m.tphi_trans, m.t1_osc,
                   m.omega_t, m.omega_c}) {
    blob += fmt(v);
    blob += ';';
  }
  std::uint64_t hash = 14695981039346656037ull;
  for (unsigned char byte : blob) {
    hash ^= byte;
    hash *= 1099511628211ull;
  }
  return hash;
}

}  // namespace catgrape
