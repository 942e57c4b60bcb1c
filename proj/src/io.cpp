#include "hn3/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace hn3 {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    return out;
}

void finish(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) {
        throw std::runtime_error("write to '" + path + "' failed");
    }
}

nlohmann::json detector_json(const PeakDetectorConfig& det) {
    return {{"window", det.window},
            {"prominence", det.prominence},
            {"horizon_factor", det.horizon_factor}};
}

}  // namespace

std::string format_double(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

std::string cost_model_name(CostModel model) {
    return model == CostModel::repetition ? "repetition" : "amplification";
}

CostModel cost_model_from_name(const std::string& name) {
    if (name == "repetition") return CostModel::repetition;
    if (name == "amplification") return CostModel::amplification;
    throw std::invalid_argument("unknown cost model '" + name + "'");
}

void write_trace_csv(const std::string& path, const ProbabilityTrace& trace) {
    auto out = open_out(path);
    out << "t,p\n";
    for (std::size_t t = 0; t < trace.p.size(); ++t) {
        out << t << ',' << format_double(trace.p[t]) << '\n';
    }
    finish(out, path);
}

void write_trace_json(const std::string& path, const ProbabilityTrace& trace) {
    nlohmann::json j{{"n", trace.exponent},
                     {"epsilon", trace.epsilon},
                     {"marked", trace.marked},
                     {"p", trace.p}};
    auto out = open_out(path);
    out << j.dump(2) << '\n';
    finish(out, path);
}

void write_result_json(const std::string& path, const SearchResult& result) {
    nlohmann::json j{{"n", result.size.exponent},
                     {"N", result.size.vertices},
                     {"epsilon", result.epsilon},
                     {"marked", result.marked},
                     {"peak_found", result.peak_found},
                     {"t_f", result.t_f},
                     {"p_max", result.p_max},
                     {"cost", result.cost},  // serialized as null when infinite
                     {"cost_model", cost_model_name(result.model)},
                     {"detector", detector_json(result.detector)}};
    auto out = open_out(path);
    out << j.dump(2) << '\n';
    finish(out, path);
}

void write_sweep_csv(const std::string& path, std::span<const SweepRecord> records) {
    auto out = open_out(path);
    out << "n,N,epsilon,k0,t_f,p_max,cost,peak_found\n";
    for (const auto& r : records) {
        out << r.exponent << ',' << r.vertices << ',' << format_double(r.epsilon) << ','
            << r.marked << ',' << r.t_f << ',' << format_double(r.p_max) << ','
            << format_double(r.cost) << ',' << (r.peak_found ? 1 : 0) << '\n';
    }
    finish(out, path);
}

void write_sweep_json(const std::string& path, std::span<const SweepRecord> records) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : records) {
        rows.push_back({{"n", r.exponent},
                        {"N", r.vertices},
                        {"epsilon", r.epsilon},
                        {"k0", r.marked},
                        {"t_f", r.t_f},
                        {"p_max", r.p_max},
                        {"cost", r.cost},
                        {"peak_found", r.peak_found}});
    }
    auto out = open_out(path);
    out << rows.dump(2) << '\n';
    finish(out, path);
}

std::vector<SweepRecord> read_sweep_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "' for reading");
    }
    std::string line;
    if (!std::getline(in, line) || line != "n,N,epsilon,k0,t_f,p_max,cost,peak_found") {
        throw std::runtime_error("'" + path + "' is not a sweep CSV");
    }
    std::vector<SweepRecord> records;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> fields;
        std::istringstream row(line);
        std::string field;
        while (std::getline(row, field, ',')) {
            fields.push_back(field);
        }
        if (fields.size() != 8) {
            throw std::runtime_error("'" + path + "': malformed row at line " +
                                     std::to_string(lineno));
        }
        try {
            SweepRecord r;
            r.exponent = std::stoi(fields[0]);
            r.vertices = std::stoull(fields[1]);
            r.epsilon = std::stod(fields[2]);
            r.marked = static_cast<std::uint32_t>(std::stoul(fields[3]));
            r.t_f = std::stoull(fields[4]);
            r.p_max = std::stod(fields[5]);
            r.cost = std::stod(fields[6]);  // stod accepts the inf written for no-peak rows
            r.peak_found = std::stoi(fields[7]) != 0;
            records.push_back(r);
        } catch (const std::exception&) {
            throw std::runtime_error("'" + path + "': malformed row at line " +
                                     std::to_string(lineno));
        }
    }
    return records;
}

void write_fit_json(const std::string& path, const FitResult& fit) {
    nlohmann::json j{{"model", fit.model},
                     {"slope", fit.slope},
                     {"intercept", fit.intercept},
                     {"r2", fit.r_squared},
                     {"rmse", fit.rmse},
                     {"max_abs_residual", fit.max_abs_residual},
                     {"points", fit.points}};
    if (fit.model == "cost_scaling") {
        j["c"] = fit.slope;
        j["prefactor"] = std::exp(fit.intercept);
    }
    auto out = open_out(path);
    out << j.dump(2) << '\n';
    finish(out, path);
}

void write_optimum_json(const std::string& path, const OptimalEpsilon& best) {
    nlohmann::json j{{"epsilon_star", best.epsilon}, {"cost", best.cost}};
    auto out = open_out(path);
    out << j.dump(2) << '\n';
    finish(out, path);
}

void write_edges_csv(const std::string& path, std::span<const Edge> edges) {
    auto out = open_out(path);
    out << "k,neighbor,edge_type\n";
    for (const auto& e : edges) {
        out << e.k << ',' << e.neighbor << ',' << (e.smallworld ? "smallworld" : "backbone")
            << '\n';
    }
    finish(out, path);
}

void write_state_csv(const std::string& path, const WalkerState& state) {
    auto out = open_out(path);
    out << "a,k,re,im\n";
    const std::uint32_t count = state.size.vertices;
    for (std::uint32_t a = 0; a < 3; ++a) {
        for (std::uint32_t k = 0; k < count; ++k) {
            const auto& amp = state.at(a, k);
            out << a << ',' << k << ',' << format_double(amp.real()) << ','
                << format_double(amp.imag()) << '\n';
        }
    }
    finish(out, path);
}

}  // namespace hn3
