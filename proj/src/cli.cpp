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

#include "qrsim/cli.hpp"

#include <cstdio>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "qrsim/dsl.hpp"
#include "qrsim/json_io.hpp"

namespace qrsim {

namespace {

struct CliFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw CliFailure("cannot open file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

Circuit parse_circuit_file(const std::string& path, std::ostream& err) {
    const ParseResult result = parse_circuit(read_file(path));
    if (!result.ok()) {
        for (const ParseDiagnostic& d : result.diagnostics) {
            err << path << ": " << format_diagnostic(d) << "\n";
        }
        throw CliFailure("circuit '" + path + "' has " +
                         std::to_string(result.diagnostics.size()) + " problem(s)");
    }
    return result.circuit;
}

void emit(const nlohmann::json& doc, const std::string& out_path, std::ostream& out) {
    const std::string text = doc.dump(2) + "\n";
    if (out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(out_path);
    if (!file) {
        throw CliFailure("cannot write output file '" + out_path + "'");
    }
    file << text;
}

struct CommonOptions {
    std::uint64_t shots = 8192;
    std::uint64_t seed = 1;
    std::string noise_path;
    std::string out_path;

    std::optional<DeviceCalibration> load_noise() const {
        if (noise_path.empty()) return std::nullopt;
        return load_calibration_file(noise_path);
    }
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool with_noise = true) {
    cmd->add_option("--shots", opts.shots, "Shots per measurement run")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", opts.seed, "Root seed for all sampling streams");
    if (with_noise) {
        cmd->add_option("--noise", opts.noise_path, "Device calibration JSON enabling noise");
    }
    cmd->add_option("--out", opts.out_path, "Write the JSON result to this file");
}

int run_command(const Circuit& parsed, const CommonOptions& opts, bool strict_coupling,
                bool rewrite_coupling, std::ostream& out, std::ostream& err) {
    const std::optional<DeviceCalibration> cal = opts.load_noise();
    Circuit circuit = parsed;

    if (strict_coupling || rewrite_coupling) {
        const CouplingReport report = validate_coupling(
            *cal, circuit, strict_coupling ? CouplingMode::Strict : CouplingMode::Rewrite);
        if (!report.violations.empty()) {
            for (const CouplingViolation& v : report.violations) {
                err << "coupling violation at op " << v.op_index << ": " << v.message << "\n";
            }
            return 1;
        }
        circuit = report.circuit;
    }

    if (circuit.measurements.empty()) {
        err << "circuit has no measurements; add 'measure q[i] -> c[j]' lines\n";
        return 1;
    }

    Counts counts;
    if (cal) {
        if (circuit.num_qubits > cal->num_qubits()) {
            throw CliFailure("circuit does not fit the calibration's device");
        }
        const DensityMatrix rho = simulate_noisy(circuit, *cal);
        const std::vector<int> qubits = measured_qubits_by_cbit(circuit.measurements);
        std::vector<double> dist = exact_probabilities(rho, qubits);
        dist = apply_readout_error(dist, *cal, qubits);
        counts = sample_distribution(dist, static_cast<int>(qubits.size()), opts.shots, opts.seed);
    } else {
        const StateVector psi = simulate(circuit);
        counts = sample_measurements(psi, circuit.measurements, opts.shots, opts.seed);
    }

    nlohmann::json doc{{"counts", counts_to_json(counts)},
                       {"num_qubits", circuit.num_qubits},
                       {"seed", opts.seed}};
    emit(doc, opts.out_path, out);
    return 0;
}

int tomo_command(const Circuit& circuit, const std::string& qubit_spec, bool factorized,
                 const CommonOptions& opts, std::ostream& out, std::ostream& err) {
    if (!circuit.measurements.empty()) {
        err << "tomography drives its own measurements; remove 'measure' lines\n";
        return 1;
    }
    int qa = -1, qb = -1;
    char extra = '\0';
    if (std::sscanf(qubit_spec.c_str(), "%d,%d%c", &qa, &qb, &extra) != 2) {
        throw CliFailure("--qubits expects 'i,j', got '" + qubit_spec + "'");
    }

    const std::optional<DeviceCalibration> cal = opts.load_noise();
    TomographyOptions topts;
    topts.shots = opts.shots;
    topts.seed = opts.seed;
    topts.noise = cal ? &*cal : nullptr;
    topts.factorized = factorized;
    const TomographyResult result = run_tomography(circuit, qa, qb, topts);

    nlohmann::json doc = tomography_to_json(result);
    doc["qubits"] = {qa, qb};
    doc["seed"] = opts.seed;
    emit(doc, opts.out_path, out);
    return 0;
}

int fidelity_command(const std::string& target_spec, const std::string& rho_path,
                     std::ostream& out) {
    const DensityMatrix rho = load_density_file(rho_path);
    DensityMatrix target{1};
    if (target_spec == "bell-phi-plus") {
        target = bell_phi_plus_density();
    } else {
        target = load_density_file(target_spec);
    }
    const double f = fidelity(target, rho);
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.4f", f);
    out << buffer << "\n";
    return 0;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"qrsim - entanglement swapping, purification and tomography simulator"};
    app.require_subcommand(1);

    CommonOptions run_opts;
    std::string run_file;
    bool strict_coupling = false, rewrite_coupling = false;
    CLI::App* run_cmd = app.add_subcommand("run", "Simulate a circuit file and emit counts");
    run_cmd->add_option("file", run_file, "Circuit file")->required();
    add_common(run_cmd, run_opts);
    CLI::Option* strict_opt =
        run_cmd->add_flag("--strict-coupling", strict_coupling, "Reject cx outside the coupling map");
    CLI::Option* rewrite_opt = run_cmd->add_flag("--rewrite-coupling", rewrite_coupling,
                                                 "Reverse cx via Hadamards where the map allows");
    CLI::Option* run_noise = run_cmd->get_option("--noise");
    strict_opt->needs(run_noise)->excludes(rewrite_opt);
    rewrite_opt->needs(run_noise);

    CommonOptions swap_opts;
    CLI::App* swap_cmd = app.add_subcommand("swap", "Run the entanglement swapping experiment");
    add_common(swap_cmd, swap_opts);

    CommonOptions purify_opts;
    double phi = 0.125;
    std::string mode_name = "ancilla";
    CLI::App* purify_cmd =
        app.add_subcommand("purify", "Run the error injection and purification experiment");
    purify_cmd->add_option("--phi", phi, "Phase-change angle in radians");
    purify_cmd->add_option("--mode", mode_name, "Correction mode: ancilla or direct")
        ->check(CLI::IsMember({"ancilla", "direct"}));
    add_common(purify_cmd, purify_opts);

    CommonOptions tomo_opts;
    std::string tomo_file, qubit_spec;
    bool factorized = false;
    CLI::App* tomo_cmd =
        app.add_subcommand("tomo", "Tomograph two qubits of a circuit's output state");
    tomo_cmd->add_option("file", tomo_file, "Circuit file (no measurements)")->required();
    tomo_cmd->add_option("--qubits", qubit_spec, "Pair to tomograph, e.g. 0,2")->required();
    tomo_cmd->add_flag("--factorized", factorized,
                       "Use single-qubit Stokes products instead of joint expectations");
    add_common(tomo_cmd, tomo_opts);

    std::string target_spec, rho_path;
    CLI::App* fid_cmd = app.add_subcommand("fidelity", "Fidelity between two stored states");
    fid_cmd->add_option("--target", target_spec, "'bell-phi-plus' or a density JSON file")
        ->required();
    fid_cmd->add_option("--rho", rho_path, "Density JSON file to compare")->required();

    try {
        std::vector<const char*> argv;
        argv.push_back("qrsim");
        for (const std::string& a : args) argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);  // prints the right (sub)command help
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    try {
        if (run_cmd->parsed()) {
            const Circuit circuit = parse_circuit_file(run_file, err);
            return run_command(circuit, run_opts, strict_coupling, rewrite_coupling, out, err);
        }
        if (swap_cmd->parsed()) {
            const std::optional<DeviceCalibration> cal = swap_opts.load_noise();
            const ProtocolReport report =
                run_swap_experiment(cal ? &*cal : nullptr, swap_opts.shots, swap_opts.seed);
            emit(protocol_report_to_json(report), swap_opts.out_path, out);
            return 0;
        }
        if (purify_cmd->parsed()) {
            const std::optional<DeviceCalibration> cal = purify_opts.load_noise();
            ErrorSpec spec;
            spec.phi = phi;
            const ProtocolReport report = run_purification_experiment(
                cal ? &*cal : nullptr, spec, purification_mode_from_name(mode_name),
                purify_opts.shots, purify_opts.seed);
            emit(protocol_report_to_json(report), purify_opts.out_path, out);
            return 0;
        }
        if (tomo_cmd->parsed()) {
            const Circuit circuit = parse_circuit_file(tomo_file, err);
            return tomo_command(circuit, qubit_spec, factorized, tomo_opts, out, err);
        }
        if (fid_cmd->parsed()) {
            return fidelity_command(target_spec, rho_path, out);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << "no command selected\n";
    return 2;
}

}  // namespace qrsim
