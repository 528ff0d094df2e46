#include "holonomy/io.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <utility>

namespace holo::io {

using nlohmann::json;

namespace {

json complex_vector_to_json(const Vector& v) {
    json entries = json::array();
    for (Eigen::Index k = 0; k < v.size(); ++k) {
        entries.push_back({v(k).real(), v(k).imag()});
    }
    return entries;
}

Vector complex_vector_from_json(const json& j) {
    if (!j.is_array()) throw InvalidInput("vector: expected an array of [re, im] pairs");
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t k = 0; k < j.size(); ++k) {
        const json& pair = j[k];
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() ||
            !pair[1].is_number()) {
            throw InvalidInput("vector: entry " + std::to_string(k) +
                               " is not an [re, im] pair");
        }
        v(static_cast<Eigen::Index>(k)) =
            Complex(pair[0].get<double>(), pair[1].get<double>());
    }
    numkernel::require_finite(v, "vector entries");
    return v;
}

json real3_to_json(const Eigen::Vector3d& v) {
    return json::array({v(0), v(1), v(2)});
}

Eigen::Vector3d real3_from_json(const json& j) {
    if (!j.is_array() || j.size() != 3) throw InvalidInput("expected a 3-vector");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

}  // namespace

json matrix_to_json(const Matrix& m, const std::string& label) {
    json entries = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            entries.push_back({m(r, c).real(), m(r, c).imag()});
        }
    }
    json j{{"schema", kMatrixSchema},
           {"rows", m.rows()},
           {"cols", m.cols()},
           {"entries", std::move(entries)}};
    if (!label.empty()) j["label"] = label;
    return j;
}

Matrix matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") ||
        !j.contains("entries")) {
        throw InvalidInput("matrix: missing rows/cols/entries");
    }
    const auto rows = j.at("rows").get<Eigen::Index>();
    const auto cols = j.at("cols").get<Eigen::Index>();
    const json& entries = j.at("entries");
    if (rows < 1 || cols < 1) throw InvalidInput("matrix: non-positive shape");
    if (!entries.is_array() ||
        entries.size() != static_cast<std::size_t>(rows * cols)) {
        throw InvalidInput("matrix: entries length does not equal rows*cols");
    }
    Matrix m(rows, cols);
    std::size_t k = 0;
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c, ++k) {
            const json& pair = entries[k];
            if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() ||
                !pair[1].is_number()) {
                throw InvalidInput("matrix: entry " + std::to_string(k) +
                                   " is not an [re, im] pair");
            }
            m(r, c) = Complex(pair[0].get<double>(), pair[1].get<double>());
        }
    }
    numkernel::require_finite(m, "matrix entries");
    return m;
}

MatrixFile read_matrix_file(const std::string& path) {
    json j;
    try {
        j = json::parse(read_text_file(path));
    } catch (const json::exception& e) {
        throw InvalidInput("cannot parse '" + path + "': " + e.what());
    }
    MatrixFile file{matrix_from_json(j), std::nullopt};
    if (j.contains("label") && j["label"].is_string()) {
        file.label = j["label"].get<std::string>();
    }
    return file;
}

void write_matrix_file(const std::string& path, const Matrix& m, const std::string& label) {
    atomic_write(path, matrix_to_json(m, label).dump(2) + "\n");
}

namespace {

json channel_to_json(const synthesis::PhaseChannel& c) {
    return json{{"v", complex_vector_to_json(c.v)},
                {"w", complex_vector_to_json(c.w)},
                {"theta", c.theta},
                {"tau", c.tau},
                {"eps0", complex_vector_to_json(c.eps0)},
                {"eps1", complex_vector_to_json(c.eps1)},
                {"r", real3_to_json(c.r)},
                {"a", real3_to_json(c.a)},
                {"omega", real3_to_json(c.omega)},
                {"A", matrix_to_json(c.A)},
                {"H", matrix_to_json(c.H)}};
}

synthesis::PhaseChannel channel_from_json(const json& j) {
    synthesis::PhaseChannel c;
    c.v = complex_vector_from_json(j.at("v"));
    c.w = complex_vector_from_json(j.at("w"));
    c.theta = j.at("theta").get<double>();
    c.tau = j.at("tau").get<double>();
    c.eps0 = complex_vector_from_json(j.at("eps0"));
    c.eps1 = complex_vector_from_json(j.at("eps1"));
    c.r = real3_from_json(j.at("r"));
    c.a = real3_from_json(j.at("a"));
    c.omega = real3_from_json(j.at("omega"));
    c.A = matrix_from_json(j.at("A"));
    c.H = matrix_from_json(j.at("H"));
    // The Pauli triple is derived data; rebuild it from the epsilon basis.
    c.sigma1 = c.eps0 * c.eps1.adjoint() + c.eps1 * c.eps0.adjoint();
    c.sigma2 = Complex(0.0, 1.0) * (c.eps0 * c.eps1.adjoint() - c.eps1 * c.eps0.adjoint());
    c.sigma3 = c.eps1 * c.eps1.adjoint() - c.eps0 * c.eps0.adjoint();
    c.refresh_cache_and_validate();
    return c;
}

}  // namespace

json plan_to_json(const synthesis::TightPlan& plan) {
    json ancillas = json::array();
    for (const Vector& w : plan.ancillas) ancillas.push_back(complex_vector_to_json(w));
    json channels = json::array();
    for (const synthesis::PhaseChannel& c : plan.channels) channels.push_back(channel_to_json(c));
    return json{{"schema", kPlanSchema},
                {"tool_version", kToolVersion},
                {"tau", plan.tau},
                {"ambient_dim", plan.ambient_dim()},
                {"gate", matrix_to_json(plan.gate)},
                {"phases", plan.phases.phases},
                {"computational_frame", matrix_to_json(plan.computational_frame.matrix())},
                {"ancillas", std::move(ancillas)},
                {"channels", std::move(channels)}};
}

synthesis::TightPlan plan_from_json(const json& j) {
    if (!j.is_object() || j.value("schema", "") != kPlanSchema) {
        throw InvalidInput("plan: missing or unsupported schema tag");
    }
    Matrix gate = matrix_from_json(j.at("gate"));
    geometry::Frame frame(matrix_from_json(j.at("computational_frame")));
    bounds::PhaseSpectrum phases(j.at("phases").get<std::vector<double>>());
    std::vector<Vector> ancillas;
    for (const json& a : j.at("ancillas")) ancillas.push_back(complex_vector_from_json(a));
    std::vector<synthesis::PhaseChannel> channels;
    for (const json& c : j.at("channels")) channels.push_back(channel_from_json(c));
    synthesis::TightPlan plan{std::move(gate),    std::move(frame), std::move(phases),
                              std::move(ancillas), std::move(channels),
                              j.at("tau").get<double>()};
    plan.validate();
    return plan;
}

synthesis::TightPlan read_plan_file(const std::string& path) {
    json j;
    try {
        j = json::parse(read_text_file(path));
    } catch (const json::exception& e) {
        throw InvalidInput("cannot parse '" + path + "': " + e.what());
    }
    return plan_from_json(j);
}

json report_to_json(const evolution::TightnessReport& report, const std::string& mode,
                    double wall_seconds) {
    return json{{"schema", kReportSchema},
                {"tool_version", kToolVersion},
                {"mode", mode},
                {"steps", report.steps},
                {"tau", report.tau},
                {"wall_seconds", wall_seconds},
                {"target_gate", matrix_to_json(report.target_gate)},
                {"realized_holonomy", matrix_to_json(report.realized_holonomy)},
                {"holonomy_error", report.holonomy_error},
                {"bound", report.bound},
                {"realized_length", report.realized_length},
                {"length_gap", report.length_gap},
                {"qsl_bound_time", report.qsl_bound_time},
                {"qsl_slack", report.qsl_slack},
                {"max_pt_residual", report.max_pt_residual},
                {"closure_residual", report.closure_residual},
                {"unitarity_drift", report.unitarity_drift},
                {"length_projector_route", report.length_projector_route},
                {"length_split_error", report.length_split_error},
                {"holonomy_split_error", report.holonomy_split_error}};
}

json falsify_report_to_json(const falsify::FalsifyReport& report) {
    json loops = json::array();
    for (const falsify::LoopRecord& r : report.records) {
        loops.push_back({{"seed", r.seed},
                         {"dim", r.dim},
                         {"rank", r.rank},
                         {"length", r.length},
                         {"mesh_error", r.mesh_error},
                         {"bound", r.bound},
                         {"margin", r.margin},
                         {"closure_residual", r.closure_residual}});
    }
    return json{{"schema", kFalsifySchema},
                {"tool_version", kToolVersion},
                {"dim", report.config.dim},
                {"rank", report.config.rank},
                {"loops", report.config.loops},
                {"samples", report.config.samples},
                {"generators", report.config.generators},
                {"seed", report.config.seed},
                {"tau", report.config.tau},
                {"min_margin", report.min_margin},
                {"violations", report.violations},
                {"records", std::move(loops)}};
}

void atomic_write(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InvalidInput("cannot open '" + tmp.string() + "' for writing");
        out << content;
        if (!out.good()) throw Error("write to '" + tmp.string() + "' failed");
    }
    fs::rename(tmp, target);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace holo::io
