// Copyright 2026 The qrsim authors
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

#include <json.hpp>

#include "qrsim/protocols.hpp"

namespace qrsim {

// File formats. Density matrices: {"dim": d, "re": [[...]], "im": [[...]]}
// with row-major arrays. Statevectors: {"num_qubits": n, "re": [...],
// "im": [...]}. Counts: {"shots": n, "histogram": {"bits": count}}. Key
// order in emitted JSON is alphabetical, so identical inputs produce
// byte-identical output.

nlohmann::json density_to_json(const DensityMatrix& rho);
DensityMatrix density_from_json(const nlohmann::json& doc);
DensityMatrix load_density_file(const std::string& path);

nlohmann::json statevector_to_json(const StateVector& psi);
nlohmann::json counts_to_json(const Counts& counts);

nlohmann::json tensor_to_json(const CorrelationTensor& tensor);
nlohmann::json tomography_to_json(const TomographyResult& result);

nlohmann::json fidelity_report_json(double fidelity_value, const std::string& target_label,
                                    std::uint64_t shots_per_setting, std::uint64_t seed);

nlohmann::json protocol_report_to_json(const ProtocolReport& report);

}  // namespace qrsim
