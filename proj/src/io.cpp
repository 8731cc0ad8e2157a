#include "causalflow/io.hpp"

#include "causalflow/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>

namespace causalflow {

namespace {

using nlohmann::json;

Matrix matrix_from_json(const json& j, std::string_view field) {
    if (!j.is_array()) throw Error(ErrorCode::InvalidInput, std::string(field) + " must be an array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    Matrix m(rows, rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const auto& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != rows) {
            throw Error(ErrorCode::DimensionMismatch, std::string(field) + " must be square");
        }
        for (Eigen::Index c = 0; c < rows; ++c) {
            const auto& v = row[static_cast<std::size_t>(c)];
            if (!v.is_number()) throw Error(ErrorCode::InvalidInput, std::string(field) + " entries must be numbers");
            m(r, c) = v.get<double>();
        }
    }
    return m;
}

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

double scale(bool bits) { return bits ? 1.0 / std::numbers::ln2 : 1.0; }

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string dot_id(const std::string& name) {
    std::string out = "\"";
    for (char c : name) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

}  // namespace

ARProcessSpec spec_from_json(const json& j) {
    if (!j.is_object()) throw Error(ErrorCode::InvalidInput, "spec must be a JSON object");
    for (const char* field : {"channels", "coupling", "noise_cov"}) {
        if (!j.contains(field)) throw Error(ErrorCode::InvalidInput, std::string("spec is missing '") + field + "'");
    }
    if (!j["channels"].is_array()) throw Error(ErrorCode::InvalidInput, "channels must be an array of names");
    std::vector<std::string> channels;
    for (const auto& c : j["channels"]) {
        if (!c.is_string()) throw Error(ErrorCode::InvalidInput, "channel names must be strings");
        channels.push_back(c.get<std::string>());
    }
    return ARProcessSpec(std::move(channels), matrix_from_json(j["coupling"], "coupling"),
                         matrix_from_json(j["noise_cov"], "noise_cov"));
}

json spec_to_json(const ARProcessSpec& spec) {
    return {{"channels", spec.channel_names()},
            {"coupling", matrix_to_json(spec.coupling())},
            {"noise_cov", matrix_to_json(spec.noise_cov())}};
}

ARProcessSpec load_spec(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidInput, "cannot open spec file " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::InvalidInput, "spec file " + path.string() + " is not valid JSON: " + e.what());
    }
    return spec_from_json(j);
}

TimeSeriesPanel read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorCode::InvalidInput, "CSV is empty");
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
    std::vector<std::string> channels;
    for (auto name : split(line)) channels.emplace_back(name);

    std::vector<double> values;
    std::size_t rows = 0;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split(line);
        if (fields.size() != channels.size()) {
            throw Error(ErrorCode::DimensionMismatch, "CSV line " + std::to_string(line_no) + " has " +
                                                          std::to_string(fields.size()) + " fields, expected " +
                                                          std::to_string(channels.size()));
        }
        for (auto f : fields) {
            double v = 0.0;
            const auto res = std::from_chars(f.data(), f.data() + f.size(), v);
            if (res.ec != std::errc() || res.ptr != f.data() + f.size()) {
                throw Error(ErrorCode::InvalidInput,
                            "CSV line " + std::to_string(line_no) + ": '" + std::string(f) + "' is not a number");
            }
            values.push_back(v);
        }
        ++rows;
    }
    if (rows == 0) throw Error(ErrorCode::InvalidInput, "CSV has no data rows");

    Matrix data(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(channels.size()));
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < channels.size(); ++c) {
            data(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = values[r * channels.size() + c];
        }
    }
    return TimeSeriesPanel(std::move(channels), std::move(data));
}

TimeSeriesPanel load_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidInput, "cannot open CSV file " + path.string());
    return read_csv(in);
}

void write_csv(std::ostream& out, const TimeSeriesPanel& panel) {
    const auto& names = panel.channels();
    for (std::size_t c = 0; c < names.size(); ++c) out << (c ? "," : "") << names[c];
    out << '\n';
    const Matrix& data = panel.data();
    for (Eigen::Index r = 0; r < data.rows(); ++r) {
        for (Eigen::Index c = 0; c < data.cols(); ++c) out << (c ? "," : "") << format_double(data(r, c));
        out << '\n';
    }
}

void save_csv(const std::filesystem::path& path, const TimeSeriesPanel& panel) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::InvalidInput, "cannot write " + path.string());
    write_csv(out, panel);
}

json report_to_json(const MeasureReport& report, bool bits) {
    json cond = json::array();
    for (const auto& c : report.conditioning) cond.push_back({{"channel", c.channel}, {"mode", to_string(c.mode)}});
    json j = {{"schema", kSchema},
              {"measure_kind", to_string(report.kind)},
              {"value", report.reported_nats() * scale(bits)},
              {"unit", bits ? "bits" : "nats"},
              {"source", report.source},
              {"target", report.target},
              {"conditioning", cond},
              {"method", to_string(report.method)}};
    if (report.is_rate()) {
        j["horizon"] = "RATE";
        j["horizon_reached"] = report.horizon_reached;
    } else {
        j["horizon"] = *report.horizon;
    }
    return j;
}

json graph_to_json(const CausalGraph& graph, bool bits) {
    json dynamic = json::array();
    for (const auto& e : graph.dynamic_edges()) {
        dynamic.push_back({{"from", e.from}, {"to", e.to}, {"weight", e.weight_nats * scale(bits)}});
    }
    json inst = json::array();
    for (const auto& e : graph.instantaneous_edges()) {
        inst.push_back({{"nodes", {e.first, e.second}}, {"weight", e.weight_nats * scale(bits)}});
    }
    return {{"schema", kSchema},
            {"nodes", graph.nodes()},
            {"conditioning_policy", to_string(graph.policy())},
            {"unit", bits ? "bits" : "nats"},
            {"dynamic_edges", dynamic},
            {"instantaneous_edges", inst}};
}

std::string graph_to_dot(const CausalGraph& graph, bool bits) {
    std::ostringstream out;
    out << std::setprecision(6);
    out << "digraph causalflow {\n";
    out << "  label=\"" << to_string(graph.policy()) << "\";\n";
    for (const auto& n : graph.nodes()) out << "  " << dot_id(n) << ";\n";
    for (const auto& e : graph.dynamic_edges()) {
        out << "  " << dot_id(e.from) << " -> " << dot_id(e.to) << " [label=\"" << e.weight_nats * scale(bits)
            << "\"];\n";
    }
    for (const auto& e : graph.instantaneous_edges()) {
        out << "  " << dot_id(e.first) << " -> " << dot_id(e.second) << " [dir=none, style=dashed, label=\""
            << e.weight_nats * scale(bits) << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace causalflow
