#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>

#include "holonomy/bounds.hpp"
#include "holonomy/evolution.hpp"
#include "holonomy/falsify.hpp"
#include "holonomy/io.hpp"
#include "holonomy/synthesis.hpp"

namespace {

using nlohmann::json;

// Exit codes are part of the scripting contract:
//   0 ok, 2 input error, 3 not unitary, 4 insufficient complement,
//   5 verification failed, 1 unexpected.
enum ExitCode {
    kOk = 0,
    kUnexpected = 1,
    kInputError = 2,
    kNotUnitary = 3,
    kInsufficientComplement = 4,
    kVerificationFailed = 5,
};

std::string format_significant(double value, int digits = 12) {
    std::ostringstream out;
    out.precision(digits);
    out << value;
    return out.str();
}

void emit(const json& j, const std::string& out_path) {
    const std::string text = j.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        holo::io::atomic_write(out_path, text);
    }
}

int cmd_bound(const std::string& input, bool projective, const std::string& out_path) {
    const holo::io::MatrixFile file = holo::io::read_matrix_file(input);
    const holo::bounds::PhaseSpectrum spectrum = holo::bounds::phases_of_gate(file.matrix);
    json j{{"schema", "holonomy-bound/1"},
           {"tool_version", holo::io::kToolVersion},
           {"projective", projective},
           {"phases", spectrum.phases}};
    double value = 0.0;
    if (projective) {
        const auto [bound, shift] = holo::bounds::projective_isoholonomic_bound(spectrum);
        value = bound;
        j["argmin_shift_index"] = shift;
    } else {
        value = holo::bounds::isoholonomic_bound(spectrum);
    }
    j["bound"] = value;
    if (file.label) j["label"] = *file.label;
    std::cout << format_significant(value) << "\n";
    emit(j, out_path);
    return kOk;
}

int cmd_synthesize(const std::string& input, double tau, int ambient_dim,
                   const std::string& out_path) {
    const holo::io::MatrixFile file = holo::io::read_matrix_file(input);
    const Eigen::Index n = file.matrix.rows();
    if (ambient_dim == 0) ambient_dim = static_cast<int>(2 * n);
    if (ambient_dim <= n) {
        throw holo::InvalidInput("ambient dimension must exceed the gate dimension");
    }
    holo::Matrix embedding = holo::Matrix::Zero(ambient_dim, n);
    for (Eigen::Index k = 0; k < n; ++k) embedding(k, k) = 1.0;
    const holo::Matrix pool = holo::Matrix::Identity(ambient_dim, ambient_dim);
    const holo::synthesis::TightPlan plan = holo::synthesis::plan_gate(
        file.matrix, holo::geometry::Frame(embedding), pool, tau);
    emit(holo::io::plan_to_json(plan), out_path);
    return kOk;
}

int cmd_verify(const std::string& plan_path, int steps, const std::string& mode_name,
               const std::string& out_path) {
    const auto t0 = std::chrono::steady_clock::now();
    const holo::synthesis::TightPlan plan = holo::io::read_plan_file(plan_path);
    const holo::evolution::SimulationMode mode = holo::evolution::mode_from_string(mode_name);
    const holo::evolution::Trajectory traj = holo::evolution::simulate_plan(plan, steps, mode);

    const holo::evolution::TightnessReport report =
        holo::evolution::verify_tightness(traj, plan.gate);
    const auto thresholds =
        holo::evolution::VerifyThresholds::for_mode(mode, steps, plan.tau);
    const std::vector<std::string> failures =
        holo::evolution::tightness_failures(report, thresholds);

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    std::cout << "bound            " << format_significant(report.bound) << "\n"
              << "length           " << format_significant(report.realized_length) << "\n"
              << "length_gap       " << format_significant(report.length_gap) << "\n"
              << "holonomy_error   " << format_significant(report.holonomy_error) << "\n"
              << "pt_residual      " << format_significant(report.max_pt_residual) << "\n"
              << "qsl_slack        " << format_significant(report.qsl_slack) << "\n"
              << "closure          " << format_significant(report.closure_residual) << "\n";

    emit(holo::io::report_to_json(report, mode_name, wall), out_path);

    if (!failures.empty()) {
        std::cerr << "verification failed:";
        for (const std::string& name : failures) std::cerr << " " << name;
        std::cerr << "\n";
        return kVerificationFailed;
    }
    std::cout << "tight within tolerances\n";
    return kOk;
}

int cmd_falsify(const holo::falsify::FalsifyConfig& config, const std::string& out_path) {
    const holo::falsify::FalsifyReport report = holo::falsify::run_falsification(config);
    std::cout << "loops      " << report.records.size() << "\n"
              << "min_margin " << format_significant(report.min_margin) << "\n"
              << "violations " << report.violations << "\n";
    emit(holo::io::falsify_report_to_json(report), out_path);
    if (report.violations > 0) {
        std::cerr << "inequality violated on " << report.violations << " loop(s)\n";
        return kVerificationFailed;
    }
    return kOk;
}

int cmd_bloch(const std::string& plan_path, int channel, int steps,
              const std::string& out_path) {
    const holo::synthesis::TightPlan plan = holo::io::read_plan_file(plan_path);
    if (channel < 0 || channel >= static_cast<int>(plan.channels.size())) {
        throw holo::InvalidInput("plan has no channel " + std::to_string(channel));
    }
    const auto samples = holo::synthesis::bloch_trajectory(
        plan.channels[static_cast<std::size_t>(channel)], steps);
    std::ostringstream csv;
    csv.precision(17);
    csv << "t,r1,r2,r3,w1,w2,w3\n";
    for (const auto& s : samples) {
        csv << s.t << "," << s.r(0) << "," << s.r(1) << "," << s.r(2) << "," << s.omega(0)
            << "," << s.omega(1) << "," << s.omega(2) << "\n";
    }
    if (out_path.empty()) {
        std::cout << csv.str();
    } else {
        holo::io::atomic_write(out_path, csv.str());
    }
    return kOk;
}

std::uint64_t resolve_seed(const CLI::Option* seed_option, std::uint64_t flag_value) {
    if (seed_option->count() > 0) return flag_value;
    if (const char* env = std::getenv("HOLONOMY_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw holo::InvalidInput("HOLONOMY_SEED is not an integer");
        }
    }
    return flag_value;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Isoholonomic bounds, tight holonomic gate synthesis and verification"};
    app.require_subcommand(1);

    std::string input;
    std::string out_path;
    bool projective = false;
    auto* bound = app.add_subcommand("bound", "Isoholonomic bound of a gate matrix");
    bound->add_option("input", input, "matrix JSON file")->required();
    bound->add_flag("--projective", projective, "bound of the projective gate class");
    bound->add_option("--out", out_path, "write the JSON result to this path");

    double tau = 1.0;
    int ambient_dim = 0;
    auto* synthesize = app.add_subcommand("synthesize", "Build a tight plan for a gate");
    synthesize->add_option("input", input, "matrix JSON file")->required();
    synthesize->add_option("--tau", tau, "loop duration")->check(CLI::PositiveNumber);
    synthesize->add_option("--ambient-dim", ambient_dim,
                           "ambient Hilbert-space dimension (default 2n)");
    synthesize->add_option("--out", out_path, "write the plan to this path");

    int steps = 10000;
    std::string mode = "closed";
    auto* verify = app.add_subcommand("verify", "Simulate a plan and check tightness");
    verify->add_option("plan", input, "plan JSON file")->required();
    verify->add_option("--steps", steps, "time grid steps")->check(CLI::Range(2, 100000000));
    verify->add_option("--mode", mode, "closed|numeric")
        ->check(CLI::IsMember({"closed", "numeric"}));
    verify->add_option("--out", out_path, "write the report to this path");

    holo::falsify::FalsifyConfig config;
    std::uint64_t seed_flag = 0;
    auto* falsify = app.add_subcommand("falsify", "Random-loop sweep of the inequality");
    falsify->add_option("--dim", config.dim, "ambient dimension");
    falsify->add_option("--rank", config.rank, "subspace rank");
    falsify->add_option("--loops", config.loops, "number of loops");
    auto* seed_option = falsify->add_option("--seed", seed_flag, "base seed");
    falsify->add_option("--steps", config.samples, "samples per loop");
    falsify->add_option("--generators", config.generators, "generators per loop");
    falsify->add_option("--out", out_path, "write per-loop records to this path");

    int channel = 0;
    auto* bloch = app.add_subcommand("bloch", "Export a channel Bloch/Rabi trajectory");
    bloch->add_option("plan", input, "plan JSON file")->required();
    bloch->add_option("--channel", channel, "channel index");
    bloch->add_option("--steps", steps, "rows = steps + 1")->check(CLI::Range(2, 100000000));
    bloch->add_option("--out", out_path, "write CSV to this path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (bound->parsed()) return cmd_bound(input, projective, out_path);
        if (synthesize->parsed()) return cmd_synthesize(input, tau, ambient_dim, out_path);
        if (verify->parsed()) return cmd_verify(input, steps, mode, out_path);
        if (falsify->parsed()) {
            config.seed = resolve_seed(seed_option, seed_flag);
            return cmd_falsify(config, out_path);
        }
        if (bloch->parsed()) {
            if (bloch->count("--steps") == 0) steps = 400;
            return cmd_bloch(input, channel, steps, out_path);
        }
    } catch (const holo::NotUnitary& e) {
        std::cerr << "not unitary: " << e.what() << "\n";
        return kNotUnitary;
    } catch (const holo::InsufficientComplement& e) {
        std::cerr << "insufficient complement: " << e.what() << "\n";
        return kInsufficientComplement;
    } catch (const holo::NotClosed& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return kVerificationFailed;
    } catch (const holo::InvalidInput& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUnexpected;
    }
    return kUnexpected;
}
