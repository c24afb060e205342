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

#include "avqclab/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <openssl/evp.h>

#include "avqclab/info.hpp"
#include "avqclab/io.hpp"

#ifndef AVQCLAB_VERSION
#define AVQCLAB_VERSION "0.0.0"
#endif

namespace avqc::cli {

namespace {

using io::Json;

struct Options {
  std::string input;
  std::string out;
  std::uint64_t seed = 0;
  double tol = 0.0;
  std::size_t budget = 0;
  std::string grid = "1/64";
  std::string mode = "auto";
  std::string format = "json";
  bool timing = false;

  std::string probes;
  std::string code;
  std::string payload;
  std::string avqc;
  std::string pair;
  std::size_t l = 0;
  std::size_t k = 0;
  double eps = 0.0;
};

// Input files by role, read once; digests go into the manifest.
class Inputs {
 public:
  Json load(const std::string& role, const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot read --" + role + " file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string bytes = buf.str();
    digests_[role] = "sha256:" + sha256_hex(bytes);
    return io::parse_document(bytes);
  }

  Json digests() const {
    Json out = Json::object();
    for (const auto& [role, digest] : digests_) out[role] = digest;
    return out;
  }

 private:
  std::map<std::string, std::string> digests_;
};

// Re-labels JSON-pointer errors with the role of the file they came from.
template <typename F>
auto from_role(const std::string& role, F&& read) {
  try {
    return read();
  } catch (const io::JsonError& e) {
    throw io::JsonError(e.pointer(), "in --" + role + ": " + e.message());
  }
}

Real parse_grid(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return std::stod(text);
    return std::stod(text.substr(0, slash)) / std::stod(text.substr(slash + 1));
  } catch (const std::exception&) {
    throw ValidationError("--grid: expected a number or a fraction like 1/64, got '" + text + "'");
  }
}

SearchMode parse_mode(const std::string& mode) {
  if (mode == "auto") return SearchMode::kAuto;
  if (mode == "exhaustive") return SearchMode::kExhaustive;
  if (mode == "greedy") return SearchMode::kGreedy;
  throw ValidationError("--mode: expected auto, exhaustive or greedy");
}

Tolerances tolerances(const Options& o) {
  Tolerances tol;
  if (o.tol > 0.0) tol.feas = o.tol;
  return tol;
}

std::string render_scalar(const Json& v) {
  if (v.is_number_float()) {
    std::ostringstream s;
    s << std::setprecision(10) << v.get<double>();
    return s.str();
  }
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

// Human summary: scalars verbatim, short arrays inline, nested data elided.
std::string render_text(const Json& doc) {
  std::ostringstream s;
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const Json& v = it.value();
    if (it.key() == "manifest") {
      s << "command: " << render_scalar(v["command"]) << "\n";
      continue;
    }
    if (v.is_primitive()) {
      s << it.key() << ": " << render_scalar(v) << "\n";
    } else if (v.is_array() && v.size() <= 16 && std::all_of(v.begin(), v.end(), [](const Json& e) {
                 return e.is_primitive();
               })) {
      s << it.key() << ":";
      for (const auto& e : v) s << " " << render_scalar(e);
      s << "\n";
    } else {
      s << it.key() << ": <" << (v.is_array() ? std::to_string(v.size()) + " entries" : "object") << ">\n";
    }
  }
  return s.str();
}

Json cmd_validate(const Options& o, Inputs& inputs) {
  const Json doc = from_role("input", [&] { return inputs.load("input", o.input); });
  const std::string kind = from_role("input", [&] { return io::document_kind(doc); });
  Json out{{"kind", "validation_report"}, {"valid", true}, {"object_kind", kind}};
  from_role("input", [&] {
    if (kind == "channel") {
      const QuantumChannel ch = io::channel_from_json(doc, "");
      const Real choi_min = min_eigenvalue(choi_matrix(ch));
      if (choi_min < -kTol.psd) throw io::JsonError("/kraus", "Choi matrix is not positive semidefinite");
      out["dim_in"] = ch.dim_in();
      out["dim_out"] = ch.dim_out();
      out["kraus_count"] = ch.kraus().size();
      out["choi_min_eigenvalue"] = choi_min;
    } else if (kind == "avqc") {
      const Avqc a = io::avqc_from_json(doc);
      for (std::size_t s = 0; s < a.size(); ++s) {
        if (!choi_is_psd(a.channel(s))) {
          throw io::JsonError("/channels/" + a.states()[s], "Choi matrix is not positive semidefinite");
        }
      }
      out["states"] = a.size();
      out["dim_in"] = a.dim_in();
      out["dim_out"] = a.dim_out();
    } else if (kind == "avcqc") {
      const AvCqc a = io::avcqc_from_json(doc);
      out["states"] = a.size();
      out["alphabet_size"] = a.alphabet_size();
      out["dim"] = a.dim();
    } else if (kind == "classical_avc") {
      const ClassicalAvc a = io::classical_avc_from_json(doc);
      out["states"] = a.size();
      out["inputs"] = a.inputs();
      out["outputs"] = a.outputs();
    } else if (kind == "source") {
      const BipartiteSource src = io::source_from_json(doc);
      out["x_size"] = src.x_size();
      out["y_size"] = src.y_size();
    } else if (kind == "probes") {
      const io::ProbeSet p = io::probes_from_json(doc);
      out["probe_count"] = p.mixed.empty() ? p.pure.size() : p.mixed.size();
    } else if (kind == "density_matrix") {
      out["dim"] = io::density_matrix_from_json(doc.contains("matrix") ? doc["matrix"] : Json(), "/matrix").dim();
    } else if (kind == "povm") {
      out["elements"] = io::povm_from_json(doc.contains("elements") ? doc["elements"] : Json(), "/elements").size();
    } else if (kind == "deterministic_code" || kind == "random_code") {
      const RandomCode c = io::random_code_from_json(doc);
      out["l"] = c.l();
      out["message_count"] = c.message_count();
      out["support_size"] = c.size();
    } else if (kind == "correlated_code") {
      const CorrelatedCode c = io::correlated_code_from_json(doc);
      out["l"] = c.l();
      out["r"] = c.r();
      out["message_count"] = c.message_count();
    } else if (kind == "cr_functions") {
      const CrFunctionsPair p = io::cr_functions_from_json(doc);
      out["l"] = p.l;
      out["gamma_size"] = p.gamma_size;
    } else {
      throw io::JsonError("/kind", "unknown document kind \"" + kind + "\"");
    }
    return 0;
  });
  return out;
}

Json cmd_symcheck(const Options& o, Inputs& inputs) {
  const Avqc avqc = from_role("input", [&] { return io::avqc_from_json(inputs.load("input", o.input)); });
  SymmetrizabilityOptions opts;
  opts.tol = tolerances(o);
  if (o.budget > 0) opts.budget = o.budget;
  const std::size_t l = o.l == 0 ? 1 : o.l;
  SymmetrizabilityVerdict verdict;
  std::string probe_mode;
  if (o.probes.empty()) {
    probe_mode = "geometric_frame";
    verdict = check_l_symmetrizable(avqc, l, opts);
  } else {
    const io::ProbeSet probes = from_role("probes", [&] { return io::probes_from_json(inputs.load("probes", o.probes)); });
    if (!probes.pure.empty()) {
      probe_mode = "pure";
      verdict = check_symmetrizable_pure(avqc, l, probes.pure, opts);
    } else {
      probe_mode = "mixed";
      verdict = check_symmetrizable(avqc, l, probes.mixed, opts);
    }
  }
  Json out = io::to_json(verdict);
  out["l"] = l;
  out["probe_mode"] = probe_mode;
  return out;
}

Json cmd_capacity(const Options& o, Inputs& inputs) {
  const AvCqc w = from_role("input", [&] { return io::avcqc_from_json(inputs.load("input", o.input)); });
  CapacityOptions opts;
  opts.grid_step = parse_grid(o.grid);
  opts.seed = o.seed;
  if (o.budget > 0) opts.evaluation_budget = o.budget;
  return io::to_json(cq_random_capacity(w, opts));
}

Json cmd_cr(const Options& o, Inputs& inputs) {
  const BipartiteSource src = from_role("input", [&] { return io::source_from_json(inputs.load("input", o.input)); });
  const ExtractabilityVerdict v = cr_extractable(src);
  const Real mi = mutual_information(src);
  Json out{{"kind", "cr_report"},
           {"mutual_information", mi},
           {"relative_interior", in_relative_interior(src)},
           {"extractable", v.extractable},
           {"components", v.components}};
  Json decomposition = nullptr;
  if (v.decomposition) {
    Json xb = Json::array();
    Json yb = Json::array();
    for (const auto& block : v.decomposition->x_blocks) {
      Json b = Json::array();
      for (std::size_t x : block) b.push_back(src.x_alphabet()[x]);
      xb.push_back(b);
    }
    for (const auto& block : v.decomposition->y_blocks) {
      Json b = Json::array();
      for (std::size_t y : block) b.push_back(src.y_alphabet()[y]);
      yb.push_back(b);
    }
    decomposition = Json{{"x_blocks", xb}, {"y_blocks", yb}};
  }
  out["decomposition"] = decomposition;
  Json reduction = nullptr;
  if (mi > kMutualInformationFloor) {
    const BinaryReduction br = binary_reduction(src);
    reduction = Json{{"f", br.f}, {"g", br.g}, {"mutual_information", br.mutual_information}};
  }
  out["binary_reduction"] = reduction;
  Json stats = nullptr;
  if (!o.pair.empty()) {
    const CrFunctionsPair pair = from_role("pair", [&] { return io::cr_functions_from_json(inputs.load("pair", o.pair)); });
    const PairStatistics ps = cr_pair_statistics(src, pair);
    stats = Json{{"a", io::to_json(ps.a)}, {"b", io::to_json(ps.b)}, {"c", io::to_json(ps.c)}, {"agreement", ps.agreement}};
  }
  out["pair_statistics"] = stats;
  return out;
}

Json cmd_simulate(const Options& o, Inputs& inputs) {
  const Avqc avqc = from_role("input", [&] { return io::avqc_from_json(inputs.load("input", o.input)); });
  if (o.code.empty()) throw ValidationError("simulate: --code is required");
  const Json code = from_role("code", [&] { return inputs.load("code", o.code); });
  EvaluationOptions opts;
  opts.mode = parse_mode(o.mode);
  if (o.budget > 0) opts.budget = o.budget;
  const std::string kind = from_role("code", [&] { return io::document_kind(code); });
  ErrorReport report;
  if (kind == "correlated_code") {
    report = evaluate_code(avqc, from_role("code", [&] { return io::correlated_code_from_json(code); }), opts);
  } else {
    report = evaluate_code(avqc, from_role("code", [&] { return io::random_code_from_json(code); }), opts);
  }
  Json out = io::to_json(report, avqc.states());
  out["code_kind"] = kind;
  return out;
}

Json cmd_reduce(const Options& o, Inputs& inputs) {
  const Avqc avqc = from_role("input", [&] { return io::avqc_from_json(inputs.load("input", o.input)); });
  if (o.code.empty()) throw ValidationError("reduce: --code is required");
  const RandomCode code = from_role("code", [&] { return io::random_code_from_json(inputs.load("code", o.code)); });
  if (o.k == 0) throw ValidationError("reduce: --K must be a positive integer");
  const std::size_t budget = o.budget > 0 ? o.budget : kExhaustiveSearchLimit;
  const ReductionResult r = random_code_reduction(code, avqc, code.l(), o.k, o.eps, o.seed, budget);
  const Real rate = std::log2(Real(code.message_count())) / Real(code.l());
  Json indices = Json::array();
  for (std::size_t i : r.indices) indices.push_back(i);
  return Json{{"kind", "reduction_result"},
              {"verified", r.verified},
              {"eps", o.eps},
              {"eps_l", r.eps_l},
              {"K", o.k},
              {"worst_empirical_success", r.worst_empirical_success},
              {"markov_bound", reduction_success_bound(o.k, o.eps, r.eps_l, code.l(), rate, avqc.size())},
              {"indices", indices}};
}

Json cmd_compose(const Options& o, Inputs& inputs) {
  const CorrelatedCode cr = from_role("input", [&] { return io::correlated_code_from_json(inputs.load("input", o.input)); });
  if (o.payload.empty()) throw ValidationError("compose: --payload is required");
  const RandomCode payload =
      from_role("payload", [&] { return io::random_code_from_json(inputs.load("payload", o.payload)); });
  const std::size_t target = o.l == 0 ? cr.l() + payload.l() : o.l;
  const CorrelatedCode composed = compose_two_phase(cr, payload, target);
  Json out{{"kind", "composition"}, {"target_l", target}, {"code", io::to_json(composed)}};
  Json report = nullptr;
  if (!o.avqc.empty()) {
    const Avqc avqc = from_role("avqc", [&] { return io::avqc_from_json(inputs.load("avqc", o.avqc)); });
    EvaluationOptions opts;
    opts.mode = parse_mode(o.mode);
    if (o.budget > 0) opts.budget = o.budget;
    report = io::to_json(evaluate_code(avqc, composed, opts), avqc.states());
  }
  out["report"] = report;
  return out;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--input", o.input, "Primary input document")->required();
  sub->add_option("--out", o.out, "Write the result here instead of stdout");
  sub->add_option("--seed", o.seed, "Seed for stochastic steps");
  sub->add_option("--tol", o.tol, "Feasibility tolerance override");
  sub->add_option("--budget", o.budget, "Enumeration or evaluation budget override");
  sub->add_option("--grid", o.grid, "Simplex grid step, e.g. 1/64");
  sub->add_option("--mode", o.mode, "Adversary search: auto, exhaustive or greedy");
  sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  sub->add_flag("--timing", o.timing, "Record wall time in the manifest (breaks byte-identical reruns)");
}

}  // namespace

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (ctx == nullptr || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx, bytes.data(), bytes.size()) != 1 || EVP_DigestFinal_ex(ctx, digest, &len) != 1) {
    EVP_MD_CTX_free(ctx);
    throw std::runtime_error("sha256 digest failed");
  }
  EVP_MD_CTX_free(ctx);
  std::ostringstream s;
  for (unsigned int i = 0; i < len; ++i) s << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return s.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"avqclab: arbitrarily varying quantum channel analyses", "avqclab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", AVQCLAB_VERSION);
  Options o;

  CLI::App* validate = app.add_subcommand("validate", "Check a document against its invariants");
  CLI::App* symcheck = app.add_subcommand("symcheck", "Decide symmetrizability of an AVQC");
  CLI::App* capacity = app.add_subcommand("capacity", "Random-code capacity of a cq AVC");
  CLI::App* cr = app.add_subcommand("cr", "Common-randomness analysis of a bipartite source");
  CLI::App* simulate = app.add_subcommand("simulate", "Worst-case jammer evaluation of a code");
  CLI::App* reduce = app.add_subcommand("reduce", "Random code reduction by sampling");
  CLI::App* compose = app.add_subcommand("compose", "Two-phase correlated code composition");
  for (CLI::App* sub : {validate, symcheck, capacity, cr, simulate, reduce, compose}) add_common(sub, o);
  symcheck->add_option("--probes", o.probes, "Probe document; the geometric frame is used when omitted");
  symcheck->add_option("--l", o.l, "Block length (default 1)");
  cr->add_option("--pair", o.pair, "Block function pair for exact statistics");
  simulate->add_option("--code", o.code, "Code document")->required();
  reduce->add_option("--code", o.code, "Random code document")->required();
  reduce->add_option("--K", o.k, "Number of sampled codes")->required();
  reduce->add_option("--eps", o.eps, "Target error")->required();
  compose->add_option("--payload", o.payload, "Payload random code (uniform weights)")->required();
  compose->add_option("--l", o.l, "Composed block length (default: sum of parts)");
  compose->add_option("--avqc", o.avqc, "Channel family for evaluating the composed code");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  const auto start = std::chrono::steady_clock::now();
  Inputs inputs;
  Json doc;
  try {
    if (command == "validate") doc = cmd_validate(o, inputs);
    if (command == "symcheck") doc = cmd_symcheck(o, inputs);
    if (command == "capacity") doc = cmd_capacity(o, inputs);
    if (command == "cr") doc = cmd_cr(o, inputs);
    if (command == "simulate") doc = cmd_simulate(o, inputs);
    if (command == "reduce") doc = cmd_reduce(o, inputs);
    if (command == "compose") doc = cmd_compose(o, inputs);
  } catch (const io::JsonError& e) {
    err << "validation error at " << (e.pointer().empty() ? "/" : e.pointer()) << ": " << e.message() << "\n";
    return kExitValidation;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }

  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  Json config{{"tol_feas", tolerances(o).feas},
              {"budget", o.budget},
              {"grid", o.grid},
              {"mode", o.mode},
              {"format", o.format}};
  if (o.l > 0) config["l"] = o.l;
  if (command == "reduce") {
    config["K"] = o.k;
    config["eps"] = o.eps;
  }
  doc["manifest"] = Json{{"command", command},
                         {"input_digests", inputs.digests()},
                         {"seed", o.seed},
                         {"config", config},
                         {"tool_version", AVQCLAB_VERSION},
                         {"wall_time_ms", o.timing ? elapsed.count() : 0}};

  const std::string text = o.format == "text" ? render_text(doc) : io::dump(doc);
  if (o.out.empty()) {
    out << text;
  } else {
    std::ofstream file(o.out, std::ios::binary);
    if (!file) {
      err << "cannot write --out file '" << o.out << "'\n";
      return kExitValidation;
    }
    file << text;
  }
  return kExitOk;
}

}  // namespace avqc::cli
