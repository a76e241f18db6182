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

#include "catgrape/waveform_io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "catgrape/grape.hpp"

namespace catgrape {

namespace {

std::string header_text(const WaveformHeader& h) {
  char buf[256];
  std::string out;
  out += "# catgrape waveform\n";
  std::snprintf(buf, sizeof(buf), "# version = %d\n", h.version);
  out += buf;
  std::snprintf(buf, sizeof(buf), "# dt_ns = %.9f\n", h.dt);
  out += buf;
  std::snprintf(buf, sizeof(buf), "# steps = %d\n", h.steps);
  out += buf;
  std::snprintf(buf, sizeof(buf), "# carrier_t_mhz = %.9f\n", h.carrier_t_mhz);
  out += buf;
  std::snprintf(buf, sizeof(buf), "# carrier_c_mhz = %.9f\n", h.carrier_c_mhz);
  out += buf;
  std::snprintf(buf, sizeof(buf), "# model_hash = %016" PRIx64 "\n", h.model_hash);
  out += buf;
  out += "# columns: t_ns re_eps_t im_eps_t re_eps_c im_eps_c (rad/ns)\n";
  return out;
}

}  // namespace

void write_waveform(const std::filesystem::path& path, const ControlWaveform& waveform,
                    const WaveformHeader& header) {
  waveform.validate();
  WaveformHeader h = header;
  h.dt = waveform.dt;
  h.steps = waveform.steps();

  std::string body = header_text(h);
  char buf[256];
  for (int k = 0; k < waveform.steps(); ++k) {
    std::snprintf(buf, sizeof(buf), "%.9f %.9f %.9f %.9f %.9f\n", k * waveform.dt,
                  waveform.samples(k, 2), waveform.samples(k, 3), waveform.samples(k, 0),
                  waveform.samples(k, 1));
    body += buf;
  }

  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error("write_waveform: cannot open " + tmp.string());
    out << body;
    if (!out) throw Error("write_waveform: write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

WaveformFile read_waveform(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("read_waveform: cannot open " + path.string());

  WaveformFile file;
  std::vector<std::array<double, 5>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line.front() == '#') {
      std::istringstream hs(line.substr(1));
      std::string key, eq;
      hs >> key >> eq;
      if (eq != "=") continue;  // banner or column comment
      if (key == "version") hs >> file.header.version;
      else if (key == "dt_ns") hs >> file.header.dt;
      else if (key == "steps") hs >> file.header.steps;
      else if (key == "carrier_t_mhz") hs >> file.header.carrier_t_mhz;
      else if (key == "carrier_c_mhz") hs >> file.header.carrier_c_mhz;
      else if (key == "model_hash") {
        std::string hex;
        hs >> hex;
        file.header.model_hash = std::stoull(hex, nullptr, 16);
      }
      continue;
    }
    std::istringstream rs(line);
    std::array<double, 5> row{};
    for (double& v : row)
      if (!(rs >> v))
        throw Error("read_waveform: malformed row at line " + std::to_string(line_no));
    rows.push_back(row);
  }

  if (rows.empty()) throw Error("read_waveform: no samples in " + path.string());
  if (file.header.steps != 0 && file.header.steps != static_cast<int>(rows.size()))
    throw Error("read_waveform: header steps do not match row count");

  file.waveform.dt = file.header.dt;
  file.waveform.samples.resize(static_cast<Eigen::Index>(rows.size()), 4);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    // columns: t, re_t, im_t, re_c, im_c -> samples (re_c, im_c, re_t, im_t)
    file.waveform.samples(static_cast<Eigen::Index>(k), 0) = rows[k][3];
    file.waveform.samples(static_cast<Eigen::Index>(k), 1) = rows[k][4];
    file.waveform.samples(static_cast<Eigen::Index>(k), 2) = rows[k][1];
    file.waveform.samples(static_cast<Eigen::Index>(k), 3) = rows[k][2];
  }
  file.waveform.validate();
  return file;
}

ControlWaveform dispersion_correction(const ControlWaveform& waveform, double b, double tau) {
  waveform.validate();
  const int n = waveform.steps();
  const Eigen::VectorXd omega = frequency_grid(n, waveform.dt);
  const Complex im{0.0, 1.0};

  FreqControls coeffs = time_to_freq(waveform);
  for (int j = 0; j < n; ++j) {
    const Complex factor = 1.0 + b * omega(j) * std::exp(im * omega(j) * tau);
    coeffs(j, 0) *= factor;
    coeffs(j, 1) *= factor;
  }

  BandLimit full;
  const double nyquist = M_PI / waveform.dt;
  full.omega_min_c = full.omega_min_t = -nyquist;
  full.omega_max_c = full.omega_max_t = nyquist;
  return band_project(coeffs, full, waveform.dt);
}

}  // namespace catgrape
