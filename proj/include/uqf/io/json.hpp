// Copyright 2026 The UQF Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// JSON encodings: a complex scalar is [re, im], a matrix is a row-major
// nested array of scalars, a state carries "labels" and "amplitudes".

#include <complex>
#include <cstdio>
#include <string>

#include <json.hpp>
#include "uqf/circuits.hpp"
#include "uqf/error.hpp"
#include "uqf/povm.hpp"
#include "uqf/qmath.hpp"
#include "uqf/search.hpp"

namespace nlohmann {

template <>
struct adl_serializer<std::complex<double>> {
  static void to_json(json& j, const std::complex<double>& c) { j = json::array({c.real(), c.imag()}); }
  static void from_json(const json& j, std::complex<double>& c) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
      throw uqf::Error(uqf::ErrorCode::kParse, "complex scalar must be [re, im]");
    }
    c = {j[0].get<double>(), j[1].get<double>()};
  }
};

}  // namespace nlohmann

namespace uqf {

using json = nlohmann::json;

inline void to_json(json& j, const ComplexMatrix& m) {
  j = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    j.push_back(std::move(row));
  }
}

inline void from_json(const json& j, ComplexMatrix& m) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) {
    throw Error(ErrorCode::kParse, "matrix must be a nested array");
  }
  const std::size_t rows = j.size(), cols = j[0].size();
  if (!is_supported_dim(rows) || !is_supported_dim(cols)) {
    throw Error(ErrorCode::kParse, "matrix dimensions must be in {1,2,4,8}");
  }
  m = ComplexMatrix(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw Error(ErrorCode::kParse, "ragged matrix");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = j[r][c].get<cplx>();
  }
  if (!m.all_finite()) throw Error(ErrorCode::kParse, "matrix entries must be finite");
}

inline json vec2_json(const Vec2& v) { return json::array({v[0], v[1]}); }

inline Vec2 vec2_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw Error(ErrorCode::kParse, "qubit vector needs 2 entries");
  return {j[0].get<cplx>(), j[1].get<cplx>()};
}

inline void to_json(json& j, const StateVector& s) {
  json labels = json::array();
  for (Label l : s.labels().labels()) labels.push_back(std::string(1, to_char(l)));
  json amps = json::array();
  for (cplx a : s.amplitudes()) amps.push_back(a);
  j = {{"labels", labels}, {"amplitudes", amps}};
}

inline void from_json(const json& j, StateVector& s) {
  if (!j.is_object() || !j.contains("labels") || !j.contains("amplitudes")) {
    throw Error(ErrorCode::kParse, "state needs \"labels\" and \"amplitudes\"");
  }
  Subsystems labels;
  Label previous = Label::E;
  bool first = true;
  for (const json& l : j.at("labels")) {
    const std::string name = l.get<std::string>();
    if (name.size() != 1) throw Error(ErrorCode::kParse, "label must be one of E, A, B");
    Label lab;
    try {
      lab = label_from_char(name[0]);
    } catch (const Error& e) {
      throw Error(ErrorCode::kParse, e.what());
    }
    if (!first && static_cast<int>(lab) <= static_cast<int>(previous)) {
      throw Error(ErrorCode::kParse, "labels must be listed in E, A, B order without repeats");
    }
    labels = labels.with(lab);
    previous = lab;
    first = false;
  }
  if (labels.empty()) throw Error(ErrorCode::kParse, "state needs at least one label");
  const json& amps = j.at("amplitudes");
  if (!amps.is_array() || amps.size() != labels.dim()) {
    throw Error(ErrorCode::kParse, "amplitude count does not match labels");
  }
  s = StateVector(labels);
  for (std::size_t i = 0; i < labels.dim(); ++i) s[i] = amps[i].get<cplx>();
}

inline void to_json(json& j, const TwoOutcomePovm& p) { j = {{"m0", p.m0}, {"m1", p.m1}}; }

inline void from_json(const json& j, TwoOutcomePovm& p) {
  if (!j.is_object() || !j.contains("m0") || !j.contains("m1")) {
    throw Error(ErrorCode::kParse, "POVM needs \"m0\" and \"m1\"");
  }
  p.m0 = j.at("m0").get<ComplexMatrix>();
  p.m1 = j.at("m1").get<ComplexMatrix>();
  if (p.m0.rows() != 2 || p.m0.cols() != 2 || p.m1.rows() != 2 || p.m1.cols() != 2) {
    throw Error(ErrorCode::kParse, "POVM operators must be 2x2");
  }
}

inline void to_json(json& j, const CanonicalPovm& c) {
  j = {{"alpha", c.alpha}, {"beta", c.beta}, {"v0", c.v0}, {"v1", c.v1}, {"u", c.u}};
}

inline void from_json(const json& j, CanonicalPovm& c) {
  c.alpha = j.at("alpha").get<double>();
  c.beta = j.at("beta").get<double>();
  c.v0 = j.at("v0").get<ComplexMatrix>();
  c.v1 = j.at("v1").get<ComplexMatrix>();
  c.u = j.at("u").get<ComplexMatrix>();
}

inline void to_json(json& j, const AncillaCircuit& c) {
  j = {{"theta", c.theta},
       {"ancilla_prep", c.ancilla_prep},
       {"input_local_a", c.input_local_a},
       {"pre_local_a", c.pre_local_a},
       {"interaction", c.interaction},
       {"post_local_e", c.post_local_e},
       {"post_local_a", c.post_local_a},
       {"measure_basis", json::array({vec2_json(c.measure_basis[0]), vec2_json(c.measure_basis[1])})},
       {"corrections", json::array({c.corrections[0], c.corrections[1]})}};
}

inline void from_json(const json& j, AncillaCircuit& c) {
  try {
    c.theta = j.at("theta").get<double>();
    c.ancilla_prep = j.at("ancilla_prep").get<ComplexMatrix>();
    c.input_local_a = j.at("input_local_a").get<ComplexMatrix>();
    c.pre_local_a = j.at("pre_local_a").get<ComplexMatrix>();
    c.interaction = j.at("interaction").get<ComplexMatrix>();
    c.post_local_e = j.at("post_local_e").get<ComplexMatrix>();
    c.post_local_a = j.at("post_local_a").get<ComplexMatrix>();
    const json& mb = j.at("measure_basis");
    const json& cr = j.at("corrections");
    if (mb.size() != 2 || cr.size() != 2) throw Error(ErrorCode::kParse, "expected two entries");
    c.measure_basis = {vec2_from_json(mb[0]), vec2_from_json(mb[1])};
    c.corrections = {cr[0].get<ComplexMatrix>(), cr[1].get<ComplexMatrix>()};
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("circuit: ") + e.what());
  }
}

inline void to_json(json& j, const CanonicalGateParams& p) {
  j = {{"a1", p.a1}, {"a2", p.a2}, {"a3", p.a3}};
}

inline void to_json(json& j, const LocalFrame& f) {
  j = {{"e_angles", f.e_angles}, {"a_angles", f.a_angles}};
}

inline void to_json(json& j, const ScanConfig& c) {
  j = {{"grid_points", c.grid_points},     {"two_angle", c.two_angle},
       {"refine_count", c.refine_count},   {"refine_evals", c.refine_evals},
       {"c1_tol", c.c1_tol},               {"gap_threshold", c.gap_threshold},
       {"endpoint_tol", c.endpoint_tol},   {"seed", c.seed}};
}

inline void to_json(json& j, const ScanReport& r) {
  j = {{"params", r.params},
       {"achieved_a0", r.achieved_a0},
       {"accepted", r.achieved_a0.size()},
       {"refined", r.samples.size()},
       {"coverage_gap", r.coverage_gap},
       {"is_candidate", r.is_candidate},
       {"config", r.config},
       {"seed", r.config.seed}};
}

// Scan CSV: a1,a2,a3,e_angles(3),a_angles(3),c1_residual,a0 (a0 empty when
// the sample did not satisfy C1).
inline std::string scan_csv(const ScanReport& r) {
  std::string out =
      "a1,a2,a3,e_theta,e_phi,e_lambda,a_theta,a_phi,a_lambda,c1_residual,a0\n";
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  for (const ScanSample& s : r.samples) {
    out += num(r.params.a1) + "," + num(r.params.a2) + "," + num(r.params.a3);
    for (double a : s.frame.e_angles) out += "," + num(a);
    for (double a : s.frame.a_angles) out += "," + num(a);
    out += "," + num(s.c1_residual) + "," + (s.a0 ? num(*s.a0) : std::string()) + "\n";
  }
  return out;
}

}  // namespace uqf
