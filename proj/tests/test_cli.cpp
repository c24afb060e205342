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

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "avqclab/cli.hpp"
#include "avqclab/info.hpp"

using avqc::cli::run;
using Json = nlohmann::json;

namespace {

std::string data(const std::string& name) { return std::string(AVQCLAB_TEST_DATA) + "/" + name; }

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("validate accepts a well-formed channel") {
  const Outcome r = invoke({"validate", "--input", data("identity_channel.json")});
  REQUIRE(r.code == 0);
  const Json doc = Json::parse(r.out);
  CHECK(doc["kind"] == "validation_report");
  CHECK(doc["valid"] == true);
  CHECK(doc["object_kind"] == "channel");
  CHECK(doc["manifest"]["command"] == "validate");
}

TEST_CASE("symcheck on the singleton identity is infeasible") {
  const Outcome r =
      invoke({"symcheck", "--input", data("singleton_identity.avqc.json"), "--probes", data("basis_probes.json")});
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out)["feasible"] == false);
}

TEST_CASE("capacity of the swap pair vanishes up to the gap") {
  const Outcome r = invoke({"capacity", "--input", data("swap_pair.avcqc.json")});
  REQUIRE(r.code == 0);
  const Json doc = Json::parse(r.out);
  CHECK(doc["value"].get<double>() <= 1e-6 + doc["certified_gap"].get<double>());
  CHECK(doc["grid_step"].get<double>() == 1.0 / 64);
  CHECK(doc["manifest"]["config"]["grid"] == "1/64");
}

TEST_CASE("results are byte-identical across reruns and embed digests") {
  const std::vector<std::string> args{"capacity", "--input", data("swap_pair.avcqc.json"), "--seed", "5",
                                      "--grid", "1/16"};
  const Outcome a = invoke(args);
  const Outcome b = invoke(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const Json doc = Json::parse(a.out);
  CHECK(doc["manifest"]["seed"] == 5);
  CHECK(doc["manifest"]["wall_time_ms"] == 0);
  CHECK(doc["manifest"]["input_digests"]["input"] ==
        "sha256:" + avqc::cli::sha256_hex(slurp(data("swap_pair.avcqc.json"))));

  const std::string path = std::string(AVQCLAB_TEST_BINARY_DIR) + "/cli_out.json";
  std::vector<std::string> to_file = args;
  to_file.insert(to_file.end(), {"--out", path});
  const Outcome c = invoke(to_file);
  REQUIRE(c.code == 0);
  CHECK(c.out.empty());
  CHECK(slurp(path) == a.out);
  std::remove(path.c_str());
}

TEST_CASE("numbers round-trip exactly") {
  const Outcome r = invoke({"cr", "--input", data("correlated_source.json"), "--pair", data("cr_pair.json")});
  REQUIRE(r.code == 0);
  const Json doc = Json::parse(r.out);
  avqc::RealMatrix p(2, 2);
  p << 0.4, 0.1, 0.1, 0.4;
  CHECK(doc["mutual_information"].get<double>() == avqc::mutual_information(avqc::BipartiteSource(p)));
  CHECK(std::abs(doc["pair_statistics"]["agreement"].get<double>() - 0.68) < 1e-12);
  CHECK(doc["extractable"] == false);
  CHECK(Json::parse(doc.dump()) == doc);
}

TEST_CASE("simulate, reduce and compose") {
  const Outcome sim = invoke({"simulate", "--input", data("singleton_identity.avqc.json"), "--code",
                              data("perfect_code.json")});
  REQUIRE(sim.code == 0);
  CHECK(Json::parse(sim.out)["avg_success_worst"] == 1.0);

  const Outcome red = invoke({"reduce", "--input", data("singleton_identity.avqc.json"), "--code",
                              data("mixed_payload.json"), "--K", "4", "--eps", "0.6", "--seed", "3"});
  REQUIRE(red.code == 0);
  const Json rd = Json::parse(red.out);
  CHECK(rd["verified"] == true);
  CHECK(std::abs(rd["eps_l"].get<double>() - 0.275) < 1e-12);
  CHECK(rd["indices"].size() == 4);

  // eps below 2 eps_l violates the reduction precondition.
  const Outcome bad = invoke({"reduce", "--input", data("singleton_identity.avqc.json"), "--code",
                              data("mixed_payload.json"), "--K", "4", "--eps", "0.5"});
  CHECK(bad.code == 2);

  const Outcome comp = invoke({"compose", "--input", data("plain_correlated.json"), "--payload",
                               data("mixed_payload.json"), "--avqc", data("singleton_identity.avqc.json")});
  REQUIRE(comp.code == 0);
  const Json cd = Json::parse(comp.out);
  CHECK(cd["target_l"] == 2);
  CHECK(cd["code"]["kind"] == "correlated_code");
  // Perfect index transfer, then the payload average (1 + 0.45) / 2.
  CHECK(std::abs(cd["report"]["avg_success_worst"].get<double>() - 0.725) < 1e-12);
}

TEST_CASE("validation failures exit 2 with a pointer") {
  const Outcome kraus = invoke({"validate", "--input", data("malformed_channel.json")});
  CHECK(kraus.code == 2);
  CHECK(kraus.err.find("validation error at /kraus") != std::string::npos);
  CHECK(kraus.out.empty());

  const Outcome kind = invoke({"validate", "--input", data("bad_kind.json")});
  CHECK(kind.code == 2);
  CHECK(kind.err.find("at /kind") != std::string::npos);

  const Outcome truncated = invoke({"validate", "--input", data("truncated.json")});
  CHECK(truncated.code == 2);
  CHECK(truncated.err.find("malformed JSON") != std::string::npos);

  const Outcome missing = invoke({"validate", "--input", data("does_not_exist.json")});
  CHECK(missing.code == 2);

  const Outcome wrong_role =
      invoke({"symcheck", "--input", data("identity_channel.json"), "--probes", data("basis_probes.json")});
  CHECK(wrong_role.code == 2);
  CHECK(wrong_role.err.find("/kind") != std::string::npos);
}

TEST_CASE("usage errors exit 1, budget errors exit 3") {
  CHECK(invoke({}).code == 1);
  CHECK(invoke({"frobnicate"}).code == 1);
  CHECK(invoke({"validate"}).code == 1);
  CHECK(invoke({"validate", "--input", data("identity_channel.json"), "--bogus"}).code == 1);
  CHECK(invoke({"capacity", "--input", data("swap_pair.avcqc.json"), "--format", "yaml"}).code == 1);
  CHECK(invoke({"capacity", "--input", data("swap_pair.avcqc.json"), "--grid", "0.3"}).code == 2);
  CHECK(invoke({"--help"}).code == 0);
  CHECK(invoke({"--version"}).code == 0);

  const Outcome budget = invoke({"capacity", "--input", data("swap_pair.avcqc.json"), "--budget", "10"});
  CHECK(budget.code == 3);
  CHECK(budget.err.find("budget") != std::string::npos);
}

TEST_CASE("text format summarizes the result") {
  const Outcome r = invoke({"capacity", "--input", data("swap_pair.avcqc.json"), "--format", "text"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("kind: minimax_result") != std::string::npos);
  CHECK(r.out.find("certified_gap: ") != std::string::npos);
  CHECK(r.out.find("command: capacity") != std::string::npos);
}

TEST_CASE("sha256 digest") {
  CHECK(avqc::cli::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(avqc::cli::sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}
