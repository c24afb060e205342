// Copyright 2026 The avqclab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "avqclab/io.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace avqc::io {

namespace {

std::string escape_token(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') {
      out += "~0";
    } else if (c == '/') {
      out += "~1";
    } else {
      out += c;
    }
  }
  return out;
}

std::string child(const std::string& path, const std::string& key) { return path + "/" + escape_token(key); }
std::string child(const std::string& path, std::size_t index) { return path + "/" + std::to_string(index); }

const Json& field(const Json& j, const std::string& path, const std::string& key) {
  if (!j.is_object()) throw JsonError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw JsonError(child(path, key), "missing required field");
  return *it;
}

const Json& array_at(const Json& j, const std::string& path) {
  if (!j.is_array()) throw JsonError(path, "expected an array");
  return j;
}

Real number_at(const Json& j, const std::string& path) {
  if (!j.is_number()) throw JsonError(path, "expected a number");
  const Real v = j.get<Real>();
  if (!std::isfinite(v)) throw JsonError(path, "number is not finite");
  return v;
}

std::size_t count_at(const Json& j, const std::string& path) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
    throw JsonError(path, "expected a nonnegative integer");
  }
  return j.get<std::size_t>();
}

std::vector<std::string> strings_at(const Json& j, const std::string& path) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < array_at(j, path).size(); ++i) {
    if (!j[i].is_string()) throw JsonError(child(path, i), "expected a string label");
    if (!seen.insert(j[i].get<std::string>()).second) throw JsonError(child(path, i), "duplicate label");
    out.push_back(j[i].get<std::string>());
  }
  if (out.empty()) throw JsonError(path, "label list is empty");
  return out;
}

Complex complex_at(const Json& j, const std::string& path) {
  if (j.is_number()) return {number_at(j, path), 0.0};
  if (!j.is_array() || j.size() != 2) throw JsonError(path, "expected a complex number [re, im]");
  return {number_at(j[0], child(path, 0)), number_at(j[1], child(path, 1))};
}

// Runs a validating constructor, attaching the path to its complaint.
template <typename F>
auto at_path(const std::string& path, F&& make) {
  try {
    return make();
  } catch (const JsonError&) {
    throw;
  } catch (const ValidationError& e) {
    throw JsonError(path, e.what());
  }
}

Json complex_to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

Json labels_of(const std::vector<std::string>& states, const StateSequence& seq) {
  Json out = Json::array();
  for (std::size_t s : seq) out.push_back(states[s]);
  return out;
}

// Keys of an object must match the label list exactly.
void check_keys(const Json& obj, const std::string& path, const std::vector<std::string>& labels) {
  if (!obj.is_object()) throw JsonError(path, "expected an object keyed by label");
  for (const auto& label : labels) {
    if (!obj.contains(label)) throw JsonError(child(path, label), "missing entry for label");
  }
  if (obj.size() != labels.size()) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      if (std::find(labels.begin(), labels.end(), it.key()) == labels.end()) {
        throw JsonError(child(path, it.key()), "label is not declared");
      }
    }
  }
}

}  // namespace

Json parse_document(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw JsonError("", std::string("malformed JSON: ") + e.what());
  }
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

std::string document_kind(const Json& doc, const std::string& expected) {
  const Json& kind = field(doc, "", "kind");
  if (!kind.is_string()) throw JsonError("/kind", "expected a string");
  const std::string k = kind.get<std::string>();
  if (!expected.empty() && k != expected) throw JsonError("/kind", "expected \"" + expected + "\", got \"" + k + "\"");
  return k;
}

Json to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const RealMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const RealVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Json to_json(const QuantumChannel& ch) {
  Json kraus = Json::array();
  for (const auto& k : ch.kraus()) kraus.push_back(to_json(k));
  return Json{{"kind", "channel"}, {"dim_in", ch.dim_in()}, {"dim_out", ch.dim_out()}, {"kraus", kraus}};
}

Json to_json(const Avqc& avqc) {
  Json channels = Json::object();
  for (std::size_t s = 0; s < avqc.size(); ++s) channels[avqc.states()[s]] = to_json(avqc.channel(s));
  return Json{{"kind", "avqc"}, {"states", avqc.states()}, {"channels", channels}};
}

Json to_json(const AvCqc& avcqc) {
  Json channels = Json::object();
  for (std::size_t s = 0; s < avcqc.size(); ++s) {
    Json outputs = Json::object();
    for (std::size_t z = 0; z < avcqc.alphabet_size(); ++z) {
      outputs[avcqc.alphabet()[z]] = to_json(avcqc.channel(s).output(z).matrix());
    }
    channels[avcqc.states()[s]] = outputs;
  }
  return Json{{"kind", "avcqc"}, {"states", avcqc.states()}, {"alphabet", avcqc.alphabet()}, {"channels", channels}};
}

Json to_json(const BipartiteSource& src) {
  return Json{{"kind", "source"},
              {"x_alphabet", src.x_alphabet()},
              {"y_alphabet", src.y_alphabet()},
              {"joint", to_json(src.joint())}};
}

Json to_json(const Povm& povm) {
  Json out = Json::array();
  for (const auto& e : povm.elements()) out.push_back(to_json(e));
  return out;
}

Json to_json(const DeterministicCode& code) {
  Json encoder = Json::array();
  for (const auto& rho : code.encoder()) encoder.push_back(to_json(rho.matrix()));
  return Json{{"kind", "deterministic_code"}, {"l", code.l()}, {"encoder", encoder}, {"decoder", to_json(code.decoder())}};
}

Json to_json(const RandomCode& code) {
  Json support = Json::array();
  for (const auto& c : code.support()) support.push_back(to_json(c));
  return Json{{"kind", "random_code"}, {"support", support}, {"weights", to_json(code.weights())}};
}

Json to_json(const CorrelatedCode& code) {
  Json encoders = Json::array();
  for (std::size_t x = 0; x < code.x_tables(); ++x) {
    Json row = Json::array();
    for (const auto& rho : code.encoder(x)) row.push_back(to_json(rho.matrix()));
    encoders.push_back(std::move(row));
  }
  Json decoders = Json::array();
  for (std::size_t y = 0; y < code.y_tables(); ++y) decoders.push_back(to_json(code.decoder(y)));
  return Json{{"kind", "correlated_code"}, {"l", code.l()},         {"r", code.r()},
              {"prefix_len", code.prefix_len()}, {"source", to_json(code.source())},
              {"encoders", encoders},           {"decoders", decoders}};
}

Json to_json(const SymmetrizabilityVerdict& verdict) {
  Json witness = nullptr;
  if (verdict.witness) {
    Json dists = Json::array();
    for (const auto& p : verdict.witness->distributions) dists.push_back(to_json(p));
    witness = Json{{"labels", verdict.witness->labels}, {"distributions", dists}};
  }
  Json dup = Json::array();
  for (const auto& [i, j] : verdict.duplicate_probes) dup.push_back(Json::array({i, j}));
  return Json{{"kind", "symmetrizability_verdict"},
              {"feasible", verdict.feasible},
              {"residual", verdict.residual},
              {"witness", witness},
              {"duplicate_probes", dup}};
}

Json to_json(const MinimaxResult& result) {
  return Json{{"kind", "minimax_result"},
              {"value", result.value},
              {"argmax_p", to_json(result.argmax_p)},
              {"argmin_q", to_json(result.argmin_q)},
              {"grid_step", result.grid_step},
              {"certified_gap", result.certified_gap},
              {"lipschitz_estimate", result.lipschitz_estimate},
              {"evaluations", result.evaluations}};
}

Json to_json(const ErrorReport& report, const std::vector<std::string>& states) {
  return Json{{"kind", "error_report"},
              {"avg_success_worst", report.avg_success_worst},
              {"max_error_worst", report.max_error_worst},
              {"worst_state_seq", labels_of(states, report.worst_state_seq)},
              {"max_error_state_seq", labels_of(states, report.max_error_state_seq)},
              {"method", to_string(report.method)},
              {"sequences_evaluated", report.sequences_evaluated}};
}

ComplexMatrix complex_matrix_from_json(const Json& j, const std::string& path) {
  array_at(j, path);
  if (j.empty()) throw JsonError(path, "matrix has no rows");
  const std::size_t cols = array_at(j[0], child(path, 0)).size();
  if (cols == 0) throw JsonError(child(path, 0), "matrix has no columns");
  if (j.size() > kMaxDimension || cols > kMaxDimension) throw JsonError(path, "matrix exceeds the dimension cap");
  ComplexMatrix m(j.size(), cols);
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::string rp = child(path, r);
    if (array_at(j[r], rp).size() != cols) throw JsonError(rp, "row length differs from the first row");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = complex_at(j[r][c], child(rp, c));
  }
  return m;
}

RealMatrix real_matrix_from_json(const Json& j, const std::string& path) {
  array_at(j, path);
  if (j.empty()) throw JsonError(path, "matrix has no rows");
  const std::size_t cols = array_at(j[0], child(path, 0)).size();
  if (cols == 0) throw JsonError(child(path, 0), "matrix has no columns");
  RealMatrix m(j.size(), cols);
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::string rp = child(path, r);
    if (array_at(j[r], rp).size() != cols) throw JsonError(rp, "row length differs from the first row");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = number_at(j[r][c], child(rp, c));
  }
  return m;
}

RealVector real_vector_from_json(const Json& j, const std::string& path) {
  RealVector v(array_at(j, path).size());
  for (std::size_t i = 0; i < j.size(); ++i) v(i) = number_at(j[i], child(path, i));
  return v;
}

ComplexVector complex_vector_from_json(const Json& j, const std::string& path) {
  ComplexVector v(array_at(j, path).size());
  for (std::size_t i = 0; i < j.size(); ++i) v(i) = complex_at(j[i], child(path, i));
  return v;
}

DensityMatrix density_matrix_from_json(const Json& j, const std::string& path) {
  ComplexMatrix m = complex_matrix_from_json(j, path);
  return at_path(path, [&] { return DensityMatrix(std::move(m)); });
}

namespace {

// Typed readers accept documents without a "kind" field but reject a mismatched one.
void expect_kind(const Json& j, const std::string& path, const char* kind) {
  if (j.is_object() && j.contains("kind") && j["kind"] != kind) {
    throw JsonError(child(path, "kind"), std::string("expected \"") + kind + "\"");
  }
}

}  // namespace

QuantumChannel channel_from_json(const Json& j, const std::string& path) {
  expect_kind(j, path, "channel");
  const auto dim_in = static_cast<Eigen::Index>(count_at(field(j, path, "dim_in"), child(path, "dim_in")));
  const auto dim_out = static_cast<Eigen::Index>(count_at(field(j, path, "dim_out"), child(path, "dim_out")));
  const std::string kp = child(path, "kraus");
  const Json& kraus_json = array_at(field(j, path, "kraus"), kp);
  std::vector<ComplexMatrix> kraus;
  for (std::size_t k = 0; k < kraus_json.size(); ++k) {
    kraus.push_back(complex_matrix_from_json(kraus_json[k], child(kp, k)));
    if (kraus.back().rows() != dim_out || kraus.back().cols() != dim_in) {
      throw JsonError(child(kp, k), "Kraus operator must be dim_out x dim_in");
    }
  }
  return at_path(kp, [&] { return QuantumChannel(dim_in, dim_out, std::move(kraus)); });
}

Avqc avqc_from_json(const Json& j, const std::string& path) {
  expect_kind(j, path, "avqc");
  const std::vector<std::string> states = strings_at(field(j, path, "states"), child(path, "states"));
  const std::string cp = child(path, "channels");
  const Json& chans = field(j, path, "channels");
  check_keys(chans, cp, states);
  std::vector<QuantumChannel> channels;
  for (const auto& s : states) channels.push_back(channel_from_json(chans.at(s), child(cp, s)));
  return at_path(path, [&] { return Avqc(states, std::move(channels)); });
}

AvCqc avcqc_from_json(const Json& j, const std::string& path) {
  expect_kind(j, path, "avcqc");
  const std::vector<std::string> states = strings_at(field(j, path, "states"), child(path, "states"));
  const std::vector<std::string> alphabet = strings_at(field(j, path, "alphabet"), child(path, "alphabet"));
  const std::string cp = child(path, "channels");
  const Json& chans = field(j, path, "channels");
  check_keys(chans, cp, states);
  std::vector<CqChannel> channels;
  for (const auto& s : states) {
    const std::string sp = child(cp, s);
    check_keys(chans.at(s), sp, alphabet);
    std::vector<DensityMatrix> outs;
    for (const auto& z : alphabet) outs.push_back(density_matrix_from_json(chans.at(s).at(z), child(sp, z)));
    channels.push_back(at_path(sp, [&] { return CqChannel(alphabet, std::move(outs)); }));
  }
  return at_path(path, [&] { return AvCqc(states, std::move(channels)); });
}

ClassicalAvc classical_avc_from_json(const Json& j, const std::string& path) {
  expect_kind(j, path, "classical_avc");
  const std::vector<std::string> states = strings_at(field(j, path, "states"), child(path, "states"));
  const std::string kp = child(path, "kernels");
  const Json& kernels_json = field(j, path, "kernels");
  check_keys(kernels_json, kp, states);
  std::vector<RealMatrix> kernels;
  for (const auto& s : states) kernels.push_back(real_matrix_from_json(kernels_json.at(s), child(kp, s)));
  return at_path(path, [&] { return ClassicalAvc(states, std::move(kernels)); });
}

BipartiteSource source_from_json(const Json& j, const std::string& path) {
  expect_kind(j, path, "source");
  RealMatrix joint = real_matrix_from_json(field(j, path, "joint"), child(path, "joint"));
  if (!j.contains("x_alphabet") && !j.contains("y_alphabet")) {
    return at_path(path, [&] { return BipartiteSource(std::move(joint)); });
  }
  auto xs = strings_at(field(j, path, "x_alphabet"), child(path, "x_alphabet"));
  auto ys = strings_at(field(j, path, "y_alphabet"), child(path, "y_alphabet"));
  return at_path(path, [&] { return BipartiteSource(std::move(xs), std::move(ys), std::move(joint)); });
}

Povm povm_from_json(const Json& j, const std::string& path) {
  std::vector<ComplexMatrix> elements;
  for (std::size_t i = 0; i < array_at(j, path).size(); ++i) {
    elements.push_back(complex_matrix_from_json(j[i], child(path, i)));
  }
  if (elements.empty()) throw JsonError(path, "measurement has no elements");
  return at_path(path, [&] { return Povm(std::move(elements)); });
}

DeterministicCode deterministic_code_from_json(const Json& j, const std::string& path) {
  expect_kind(j, path, "deterministic_code");
  const std::size_t l = count_at(field(j, path, "l"), child(path, "l"));
  const std::string ep = child(path, "encoder");
  const Json& enc = array_at(field(j, path, "encoder"), ep);
  std::vector<DensityMatrix> encoder;
  for (std::size_t i = 0; i < enc.size(); ++i) encoder.push_back(density_matrix_from_json(enc[i], child(ep, i)));
  Povm decoder = povm_from_json(field(j, path, "decoder"), child(path, "decoder"));
  return at_path(path, [&] { return DeterministicCode(l, std::move(encoder), std::move(decoder)); });
}

RandomCode random_code_from_json(const Json& j, const std::string& path) {
  const std::string kind = j.contains("kind") && j["kind"].is_string() ? j["kind"].get<std::string>() : "";
  if (kind == "deterministic_code") return RandomCode(deterministic_code_from_json(j, path));
  if (kind != "random_code") throw JsonError(child(path, "kind"), "expected \"random_code\" or \"deterministic_code\"");
  const std::string sp = child(path, "support");
  const Json& sup = array_at(field(j, path, "support"), sp);
  std::vector<DeterministicCode> support;
  for (std::size_t c = 0; c < sup.size(); ++c) support.push_back(deterministic_code_from_json(sup[c], child(sp, c)));
  RealVector weights = real_vector_from_json(field(j, path, "weights"), child(path, "weights"));
  return at_path(path, [&] { return RandomCode(std::move(support), std::move(weights)); });
}

CorrelatedCode correlated_code_from_json(const Json& j, const std::string& path) {
  expect_kind(j, path, "correlated_code");
  const std::size_t l = count_at(field(j, path, "l"), child(path, "l"));
  const std::size_t r = count_at(field(j, path, "r"), child(path, "r"));
  const std::size_t prefix =
      j.contains("prefix_len") ? count_at(j["prefix_len"], child(path, "prefix_len")) : (r == 0 ? 0 : l / r);
  BipartiteSource source = source_from_json(field(j, path, "source"), child(path, "source"));
  const std::string ep = child(path, "encoders");
  const Json& enc = array_at(field(j, path, "encoders"), ep);
  std::vector<std::vector<DensityMatrix>> encoders;
  for (std::size_t x = 0; x < enc.size(); ++x) {
    std::vector<DensityMatrix> row;
    const std::string xp = child(ep, x);
    for (std::size_t i = 0; i < array_at(enc[x], xp).size(); ++i) {
      row.push_back(density_matrix_from_json(enc[x][i], child(xp, i)));
    }
    encoders.push_back(std::move(row));
  }
  const std::string dp = child(path, "decoders");
  const Json& dec = array_at(field(j, path, "decoders"), dp);
  std::vector<Povm> decoders;
  for (std::size_t y = 0; y < dec.size(); ++y) decoders.push_back(povm_from_json(dec[y], child(dp, y)));
  return at_path(path, [&] {
    return CorrelatedCode(l, r, std::move(source), std::move(encoders), std::move(decoders), prefix);
  });
}

CrFunctionsPair cr_functions_from_json(const Json& j, const std::string& path) {
  expect_kind(j, path, "cr_functions");
  CrFunctionsPair pair;
  pair.l = count_at(field(j, path, "l"), child(path, "l"));
  pair.gamma_size = count_at(field(j, path, "gamma_size"), child(path, "gamma_size"));
  const std::string fp = child(path, "f_table");
  const std::string gp = child(path, "g_table");
  const Json& f = array_at(field(j, path, "f_table"), fp);
  const Json& g = array_at(field(j, path, "g_table"), gp);
  for (std::size_t i = 0; i < f.size(); ++i) pair.f_table.push_back(count_at(f[i], child(fp, i)));
  for (std::size_t i = 0; i < g.size(); ++i) pair.g_table.push_back(count_at(g[i], child(gp, i)));
  return pair;
}

ProbeSet probes_from_json(const Json& j, const std::string& path) {
  expect_kind(j, path, "probes");
  ProbeSet out;
  if (j.contains("states")) {
    const std::string sp = child(path, "states");
    const Json& states = array_at(j["states"], sp);
    for (std::size_t i = 0; i < states.size(); ++i) out.mixed.push_back(density_matrix_from_json(states[i], child(sp, i)));
  }
  if (j.contains("pure")) {
    const std::string pp = child(path, "pure");
    const Json& pure = array_at(j["pure"], pp);
    for (std::size_t i = 0; i < pure.size(); ++i) {
      ComplexVector v = complex_vector_from_json(pure[i], child(pp, i));
      out.pure.push_back(at_path(child(pp, i), [&] { return PureState(std::move(v)); }));
    }
  }
  if (out.mixed.empty() == out.pure.empty()) {
    throw JsonError(path, "probe document needs exactly one of \"states\" or \"pure\"");
  }
  return out;
}

}  // namespace avqc::io
