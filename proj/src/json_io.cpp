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

#include "qrsim/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace qrsim {

using nlohmann::json;

json density_to_json(const DensityMatrix& rho) {
    const Eigen::Index d = rho.dim();
    json re = json::array();
    json im = json::array();
    for (Eigen::Index r = 0; r < d; ++r) {
        json re_row = json::array();
        json im_row = json::array();
        for (Eigen::Index c = 0; c < d; ++c) {
            re_row.push_back(rho.mat(r, c).real());
            im_row.push_back(rho.mat(r, c).imag());
        }
        re.push_back(std::move(re_row));
        im.push_back(std::move(im_row));
    }
    return json{{"dim", d}, {"re", std::move(re)}, {"im", std::move(im)}};
}

DensityMatrix density_from_json(const json& doc) {
    if (!doc.is_object() || !doc.contains("dim") || !doc.contains("re") || !doc.contains("im")) {
        throw std::invalid_argument("density JSON must carry 'dim', 're' and 'im'");
    }
    const Eigen::Index d = doc.at("dim").get<Eigen::Index>();
    int n = 0;
    while ((Eigen::Index(1) << n) < d) ++n;
    if (d < 2 || (Eigen::Index(1) << n) != d) {
        throw std::invalid_argument("density dimension must be a power of two, got " +
                                    std::to_string(d));
    }
    const json& re = doc.at("re");
    const json& im = doc.at("im");
    if (!re.is_array() || !im.is_array() || Eigen::Index(re.size()) != d ||
        Eigen::Index(im.size()) != d) {
        throw std::invalid_argument("density 're'/'im' must be dim x dim arrays");
    }
    Mat m(d, d);
    for (Eigen::Index r = 0; r < d; ++r) {
        const json& re_row = re.at(std::size_t(r));
        const json& im_row = im.at(std::size_t(r));
        if (!re_row.is_array() || !im_row.is_array() || Eigen::Index(re_row.size()) != d ||
            Eigen::Index(im_row.size()) != d) {
            throw std::invalid_argument("density 're'/'im' must be dim x dim arrays");
        }
        for (Eigen::Index c = 0; c < d; ++c) {
            m(r, c) = cplx(re_row.at(std::size_t(c)).get<double>(),
                           im_row.at(std::size_t(c)).get<double>());
        }
    }
    return DensityMatrix(n, std::move(m));
}

DensityMatrix load_density_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open density file '" + path + "'");
    }
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw std::runtime_error("density file '" + path + "' is not valid JSON: " + e.what());
    }
    return density_from_json(doc);
}

json statevector_to_json(const StateVector& psi) {
    json re = json::array();
    json im = json::array();
    for (Eigen::Index j = 0; j < psi.dim(); ++j) {
        re.push_back(psi.amps(j).real());
        im.push_back(psi.amps(j).imag());
    }
    return json{{"num_qubits", psi.num_qubits}, {"re", std::move(re)}, {"im", std::move(im)}};
}

json counts_to_json(const Counts& counts) {
    json histogram = json::object();
    for (const auto& [key, value] : counts.histogram) histogram[key] = value;
    return json{{"shots", counts.shots}, {"histogram", std::move(histogram)}};
}

json tensor_to_json(const CorrelationTensor& tensor) {
    json rows = json::array();
    for (const auto& row : tensor.t) {
        json r = json::array();
        for (double v : row) r.push_back(v);
        rows.push_back(std::move(r));
    }
    return rows;
}

json tomography_to_json(const TomographyResult& result) {
    json out{{"tensor", tensor_to_json(result.tensor)},
             {"rho_raw", density_to_json(result.rho_raw)},
             {"rho_physical", density_to_json(result.rho_physical)},
             {"shots_per_setting", result.shots_per_setting},
             {"settings_used", result.settings_used},
             {"raw_min_eigenvalue", result.raw_min_eigenvalue}};
    if (!result.counts.empty()) {
        json counts = json::object();
        for (const auto& [label, c] : result.counts) counts[label] = counts_to_json(c);
        out["counts"] = std::move(counts);
    }
    return out;
}

json fidelity_report_json(double fidelity_value, const std::string& target_label,
                          std::uint64_t shots_per_setting, std::uint64_t seed) {
    return json{{"fidelity", fidelity_value},
                {"target", target_label},
                {"shots_per_setting", shots_per_setting},
                {"seed", seed}};
}

json protocol_report_to_json(const ProtocolReport& report) {
    json stages = json::array();
    for (const StageState& stage : report.stage_states) {
        json entry = statevector_to_json(stage.state);
        entry["label"] = stage.label;
        stages.push_back(std::move(entry));
    }

    json variants = json::object();
    for (const VariantResult& variant : report.variants) {
        json pairs = json::object();
        for (const PairResult& pair : variant.pairs) {
            json p = json::object();
            p["report"] = fidelity_report_json(pair.fidelity_physical, "bell-phi-plus",
                                               pair.tomo.shots_per_setting, pair.seed);
            p["fidelity_raw"] = pair.fidelity_raw;
            p["tomography"] = tomography_to_json(pair.tomo);
            pairs[pair.label] = std::move(p);
        }
        variants[variant.name] = json{{"pairs", std::move(pairs)}};
    }

    return json{{"experiment", report.experiment},
                {"fidelities", report.fidelities},
                {"stage_states", std::move(stages)},
                {"variants", std::move(variants)},
                {"seed", report.seed},
                {"shots", report.shots}};
}

}  // namespace qrsim
