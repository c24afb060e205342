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

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "avqclab/adversary.hpp"
#include "avqclab/avqc.hpp"
#include "avqclab/capacity.hpp"
#include "avqclab/codes.hpp"
#include "avqclab/correlation.hpp"
#include "avqclab/symmetrizability.hpp"

// JSON documents. Complex numbers are [re, im]; matrices are arrays of rows.
// Every top-level document carries a "kind" string.

namespace avqc::io {

using Json = nlohmann::ordered_json;

/// Malformed input; `pointer()` is the JSON pointer of the offending value.
class JsonError : public ValidationError {
 public:
  JsonError(std::string pointer, const std::string& what)
      : ValidationError((pointer.empty() ? std::string("/") : pointer) + ": " + what),
        pointer_(std::move(pointer)),
        message_(what) {}
  const std::string& pointer() const { return pointer_; }
  /// The message without the pointer prefix.
  const std::string& message() const { return message_; }

 private:
  std::string pointer_;
  std::string message_;
};

Json parse_document(const std::string& text);
std::string dump(const Json& doc);

/// Kind string of a document, checked against `expected` when non-empty.
std::string document_kind(const Json& doc, const std::string& expected = "");

Json to_json(const ComplexMatrix& m);
Json to_json(const RealMatrix& m);
/// Vectors serialize as flat arrays.
Json to_json(const RealVector& v);
Json to_json(const QuantumChannel& ch);
Json to_json(const Avqc& avqc);
Json to_json(const AvCqc& avcqc);
Json to_json(const BipartiteSource& src);
Json to_json(const Povm& povm);
Json to_json(const DeterministicCode& code);
Json to_json(const RandomCode& code);
Json to_json(const CorrelatedCode& code);
Json to_json(const SymmetrizabilityVerdict& verdict);
Json to_json(const MinimaxResult& result);
Json to_json(const ErrorReport& report, const std::vector<std::string>& states);

// Readers take the JSON pointer of the value for error messages.
ComplexMatrix complex_matrix_from_json(const Json& j, const std::string& path);
RealMatrix real_matrix_from_json(const Json& j, const std::string& path);
RealVector real_vector_from_json(const Json& j, const std::string& path);
ComplexVector complex_vector_from_json(const Json& j, const std::string& path);
DensityMatrix density_matrix_from_json(const Json& j, const std::string& path);
QuantumChannel channel_from_json(const Json& j, const std::string& path);
Avqc avqc_from_json(const Json& j, const std::string& path = "");
AvCqc avcqc_from_json(const Json& j, const std::string& path = "");
ClassicalAvc classical_avc_from_json(const Json& j, const std::string& path = "");
BipartiteSource source_from_json(const Json& j, const std::string& path = "");
Povm povm_from_json(const Json& j, const std::string& path);
DeterministicCode deterministic_code_from_json(const Json& j, const std::string& path = "");
/// Accepts a random code, or a deterministic code as a point mass.
RandomCode random_code_from_json(const Json& j, const std::string& path = "");
CorrelatedCode correlated_code_from_json(const Json& j, const std::string& path = "");
CrFunctionsPair cr_functions_from_json(const Json& j, const std::string& path = "");

/// Probe documents: {"kind": "probes", "states": [matrix, ...]} or
/// {"kind": "probes", "pure": [vector, ...]}.
struct ProbeSet {
  std::vector<DensityMatrix> mixed;
  std::vector<PureState> pure;
};
ProbeSet probes_from_json(const Json& j, const std::string& path = "");

}  // namespace avqc::io
