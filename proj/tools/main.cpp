#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hn3/coin.hpp"
#include "hn3/dense_oracle.hpp"
#include "hn3/engine.hpp"
#include "hn3/io.hpp"
#include "hn3/search.hpp"
#include "hn3/sweep.hpp"
#include "hn3/topology.hpp"
#include "hn3/walker_state.hpp"

namespace {

// 0 success, 1 usage, 2 runtime, 3 no peak detected
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitNoPeak = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DetectorFlags {
    int window = 5;
    double prominence = 0.5;
    double horizon_factor = 20.0;

    void add_to(CLI::App& cmd) {
        cmd.add_option("--window", window, "peak detector smoothing window (odd)")
            ->capture_default_str();
        cmd.add_option("--prominence", prominence, "required fraction of the trace maximum")
            ->check(CLI::Range(1e-9, 1.0))
            ->capture_default_str();
        cmd.add_option("--horizon-factor", horizon_factor,
                       "first horizon = factor * ceil(sqrt(N) ln N)")
            ->check(CLI::Range(1.0, 1e6))
            ->capture_default_str();
    }

    hn3::PeakDetectorConfig config() const {
        hn3::PeakDetectorConfig det{window, prominence, horizon_factor};
        try {
            det.validate();
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        return det;
    }
};

std::vector<double> parse_grid(const std::string& text) {
    try {
        if (text.find(':') != std::string::npos) {
            double start = 0, stop = 0, step = 0;
            if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &start, &stop, &step) != 3) {
                throw UsageError("grid must be start:stop:step or a comma list");
            }
            if (step <= 0 || stop < start) {
                throw UsageError("grid range is empty or runs backwards");
            }
            const auto count = static_cast<std::size_t>((stop - start) / step + 1e-9) + 1;
            std::vector<double> grid(count);
            for (std::size_t i = 0; i < count; ++i) {
                grid[i] = start + static_cast<double>(i) * step;
            }
            return grid;
        }
        std::vector<double> grid;
        std::size_t pos = 0;
        while (pos < text.size()) {
            std::size_t used = 0;
            grid.push_back(std::stod(text.substr(pos), &used));
            pos += used;
            if (pos < text.size()) {
                if (text[pos] != ',') throw UsageError("grid must be comma separated");
                ++pos;
            }
        }
        if (grid.empty()) throw UsageError("grid is empty");
        return grid;
    } catch (const std::invalid_argument&) {
        throw UsageError("cannot parse grid '" + text + "'");
    }
}

std::vector<int> parse_exponent_range(const std::string& text) {
    try {
        if (text.find(':') != std::string::npos) {
            int start = 0, stop = 0, step = 1;
            const int got = std::sscanf(text.c_str(), "%d:%d:%d", &start, &stop, &step);
            if (got < 2) throw UsageError("n-range must be start:stop[:step]");
            if (step <= 0 || stop < start) {
                throw UsageError("n-range is empty or runs backwards");
            }
            std::vector<int> out;
            for (int n = start; n <= stop; n += step) out.push_back(n);
            return out;
        }
        std::vector<int> out;
        std::size_t pos = 0;
        while (pos < text.size()) {
            std::size_t used = 0;
            out.push_back(std::stoi(text.substr(pos), &used));
            pos += used;
            if (pos < text.size()) {
                if (text[pos] != ',') throw UsageError("n-range must be comma separated");
                ++pos;
            }
        }
        if (out.empty()) throw UsageError("n-range is empty");
        return out;
    } catch (const std::invalid_argument&) {
        throw UsageError("cannot parse n-range '" + text + "'");
    }
}

hn3::NetworkSize size_from(int n) {
    try {
        return hn3::NetworkSize::from_exponent(n);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

void check_epsilon(double epsilon) {
    if (!(epsilon >= 0.0 && epsilon <= 3.0)) {
        throw UsageError("epsilon must lie in [0, 3]");
    }
}

void check_marked(std::uint32_t marked, hn3::NetworkSize size) {
    if (marked >= size.vertices) {
        throw UsageError("marked vertex " + std::to_string(marked) + " outside [0, " +
                         std::to_string(size.vertices) + ")");
    }
}

int cmd_search(int n, double epsilon, std::uint32_t marked, const DetectorFlags& flags,
               const std::string& model_name, const std::string& format,
               const std::string& output, const std::vector<std::uint64_t>& snapshots) {
    const auto size = size_from(n);
    check_epsilon(epsilon);
    check_marked(marked, size);
    const auto det = flags.config();
    const auto model = hn3::cost_model_from_name(model_name);

    const auto result = hn3::run_search(size, hn3::CoinSpec{epsilon, marked}, det, model);

    if (format == "json") {
        hn3::write_trace_json(output + ".trace.json", result.trace);
    } else {
        hn3::write_trace_csv(output + ".trace.csv", result.trace);
    }
    hn3::write_result_json(output + ".result.json", result);

    for (const auto t : snapshots) {
        if (t > hn3::kHorizonCap) {
            throw UsageError("snapshot step exceeds the horizon cap");
        }
        auto state = hn3::initial_state(hn3::CoinSpec{epsilon, marked}, size);
        const auto op = hn3::make_step_operator(size, hn3::CoinSpec{epsilon, marked});
        hn3::evolve(state, op, t);
        hn3::write_state_csv(output + ".state-t" + std::to_string(t) + ".csv", state);
    }

    if (!result.peak_found) {
        std::fprintf(stderr, "no peak within %zu steps (epsilon=%s)\n",
                     result.trace.p.size() - 1, hn3::format_double(epsilon).c_str());
        return kExitNoPeak;
    }
    std::printf("n=%d epsilon=%s marked=%u t_f=%llu p_max=%s cost=%s\n", n,
                hn3::format_double(epsilon).c_str(), marked,
                static_cast<unsigned long long>(result.t_f),
                hn3::format_double(result.p_max).c_str(),
                hn3::format_double(result.cost).c_str());
    return kExitOk;
}

void write_sweep(const std::vector<hn3::SweepRecord>& records, const std::string& format,
                 const std::string& output) {
    if (format == "json") {
        hn3::write_sweep_json(output + ".json", records);
    } else {
        hn3::write_sweep_csv(output + ".csv", records);
    }
}

int cmd_sweep_eps(int n, const std::string& grid_text, std::uint32_t marked,
                  const DetectorFlags& flags, const std::string& model_name,
                  const std::string& format, const std::string& output, bool optimum) {
    const auto size = size_from(n);
    check_marked(marked, size);
    const auto grid = parse_grid(grid_text);
    for (const double eps : grid) check_epsilon(eps);
    const auto det = flags.config();
    const auto model = hn3::cost_model_from_name(model_name);

    const auto records = hn3::sweep_epsilon(size, grid, marked, det, model);
    write_sweep(records, format, output);
    if (optimum) {
        try {
            hn3::write_optimum_json(output + ".optimum.json",
                                    hn3::find_optimal_epsilon(records));
        } catch (const hn3::insufficient_data_error& e) {
            std::fprintf(stderr, "%s\n", e.what());
            return kExitRuntime;
        }
    }
    std::printf("%zu records -> %s.%s\n", records.size(), output.c_str(),
                format == "json" ? "json" : "csv");
    return kExitOk;
}

int cmd_sweep_n(const std::string& range_text, double epsilon, std::uint32_t marked,
                const DetectorFlags& flags, const std::string& model_name,
                const std::string& format, const std::string& output,
                const std::vector<std::string>& fits) {
    const auto exponents = parse_exponent_range(range_text);
    check_epsilon(epsilon);
    for (const int n : exponents) check_marked(marked, size_from(n));
    const auto det = flags.config();
    const auto model = hn3::cost_model_from_name(model_name);

    const auto records = hn3::sweep_size(hn3::CoinSpec{epsilon, marked}, exponents, det, model);
    write_sweep(records, format, output);

    for (const auto& which : fits) {
        try {
            if (which == "cost") {
                hn3::write_fit_json(output + ".fit-cost.json", hn3::fit_cost_exponent(records));
            } else if (which == "success") {
                hn3::write_fit_json(output + ".fit-success.json",
                                    hn3::fit_success_decay(records));
            } else {
                throw UsageError("--fit accepts 'cost' or 'success'");
            }
        } catch (const hn3::insufficient_data_error& e) {
            std::fprintf(stderr, "%s\n", e.what());
            return kExitRuntime;
        }
    }
    std::printf("%zu records -> %s.%s\n", records.size(), output.c_str(),
                format == "json" ? "json" : "csv");
    return kExitOk;
}

int cmd_fit(const std::string& input, const std::string& model, const std::string& output) {
    if (model != "cost" && model != "success") {
        throw UsageError("--model accepts 'cost' or 'success'");
    }
    const auto records = hn3::read_sweep_csv(input);
    try {
        const auto fit = (model == "cost") ? hn3::fit_cost_exponent(records)
                                           : hn3::fit_success_decay(records);
        hn3::write_fit_json(output + ".json", fit);
        std::printf("%s: slope=%s r2=%s (%d points)\n", fit.model.c_str(),
                    hn3::format_double(fit.slope).c_str(),
                    hn3::format_double(fit.r_squared).c_str(), fit.points);
    } catch (const hn3::insufficient_data_error& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return kExitRuntime;
    }
    return kExitOk;
}

int cmd_oracle_check(int n, std::vector<double> epsilons, std::uint32_t marked,
                     std::uint64_t steps) {
    if (n > 7) {
        throw UsageError("the dense oracle is capped at n <= 7");
    }
    const std::vector<int> sizes = n > 0 ? std::vector<int>{n} : std::vector<int>{3, 4};
    if (epsilons.empty()) {
        epsilons = {0.0, 1.0, 1.7, 2.5, 3.0};
    }
    for (const double eps : epsilons) check_epsilon(eps);

    constexpr double kDeviationLimit = 1e-10;
    constexpr double kUnitarityLimit = 1e-12;
    bool all_ok = true;
    for (const int exp : sizes) {
        const auto size = size_from(exp);
        check_marked(marked, size);
        for (const double eps : epsilons) {
            const hn3::CoinSpec spec{eps, marked};
            const double unitarity = hn3::max_unitarity_error(hn3::build_dense(size, spec));
            const double deviation = hn3::compare_engine(size, spec, steps);
            const bool ok = deviation < kDeviationLimit && unitarity < kUnitarityLimit;
            all_ok = all_ok && ok;
            std::printf(
                "check n=%d eps=%s marked=%u t=%llu deviation=%s unitarity=%s result=%s\n",
                exp, hn3::format_double(eps).c_str(), marked,
                static_cast<unsigned long long>(steps),
                hn3::format_double(deviation).c_str(),
                hn3::format_double(unitarity).c_str(), ok ? "pass" : "FAIL");
        }
    }
    return all_ok ? kExitOk : kExitRuntime;
}

int cmd_export_graph(int n, const std::string& output) {
    const auto size = size_from(n);
    const auto edges = hn3::edge_list(size);
    hn3::write_edges_csv(output + ".csv", edges);
    std::printf("%zu edges -> %s.csv\n", edges.size(), output.c_str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coined quantum-walk search on the degree-3 Hanoi network"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key = value file with option defaults");

    // search
    auto* search = app.add_subcommand("search", "single search run: trace, peak, cost");
    int s_n = 8;
    double s_eps = 1.0;
    std::uint32_t s_marked = 1;
    DetectorFlags s_det;
    std::string s_model = "repetition", s_format = "csv", s_output = "search";
    std::vector<std::uint64_t> s_snapshots;
    search->add_option("--n", s_n, "network exponent, N = 2^n")->required();
    search->add_option("--epsilon", s_eps, "coin bias in [0, 3]")->capture_default_str();
    search->add_option("--marked", s_marked, "marked vertex")->capture_default_str();
    s_det.add_to(*search);
    search->add_option("--cost-model", s_model, "repetition | amplification")
        ->check(CLI::IsMember({"repetition", "amplification"}))
        ->capture_default_str();
    search->add_option("--format", s_format, "trace format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    search->add_option("--output", s_output, "output file prefix")->capture_default_str();
    search->add_option("--snapshot", s_snapshots, "dump the state after these steps");

    // sweep-eps
    auto* sweep_eps = app.add_subcommand("sweep-eps", "sweep the coin bias at fixed size");
    int e_n = 8;
    std::string e_grid = "0.2:2.8:0.2";
    std::uint32_t e_marked = 1;
    DetectorFlags e_det;
    std::string e_model = "repetition", e_format = "csv", e_output = "sweep-eps";
    bool e_optimum = false;
    sweep_eps->add_option("--n", e_n, "network exponent")->required();
    sweep_eps->add_option("--grid", e_grid, "epsilon grid, start:stop:step or comma list")
        ->capture_default_str();
    sweep_eps->add_option("--marked", e_marked, "marked vertex")->capture_default_str();
    e_det.add_to(*sweep_eps);
    sweep_eps->add_option("--cost-model", e_model, "repetition | amplification")
        ->check(CLI::IsMember({"repetition", "amplification"}))
        ->capture_default_str();
    sweep_eps->add_option("--format", e_format, "records format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sweep_eps->add_option("--output", e_output, "output file prefix")->capture_default_str();
    sweep_eps->add_flag("--optimum", e_optimum, "also write the cost-optimal epsilon");

    // sweep-n
    auto* sweep_n = app.add_subcommand("sweep-n", "sweep the network size at fixed bias");
    std::string n_range = "6:12";
    double n_eps = 1.7;
    std::uint32_t n_marked = 1;
    DetectorFlags n_det;
    std::string n_model = "repetition", n_format = "csv", n_output = "sweep-n";
    std::vector<std::string> n_fits;
    sweep_n->add_option("--n-range", n_range, "exponents, start:stop[:step] or comma list")
        ->capture_default_str();
    sweep_n->add_option("--epsilon", n_eps, "coin bias in [0, 3]")->required();
    sweep_n->add_option("--marked", n_marked, "marked vertex")->capture_default_str();
    n_det.add_to(*sweep_n);
    sweep_n->add_option("--cost-model", n_model, "repetition | amplification")
        ->check(CLI::IsMember({"repetition", "amplification"}))
        ->capture_default_str();
    sweep_n->add_option("--format", n_format, "records format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sweep_n->add_option("--output", n_output, "output file prefix")->capture_default_str();
    sweep_n->add_option("--fit", n_fits, "also fit scaling: cost | success");

    // fit
    auto* fit = app.add_subcommand("fit", "fit scaling laws to a sweep CSV");
    std::string f_input, f_model, f_output = "fit";
    fit->add_option("--input", f_input, "sweep CSV to read")->required();
    fit->add_option("--model", f_model, "cost | success")->required();
    fit->add_option("--output", f_output, "output file prefix")->capture_default_str();

    // oracle-check
    auto* oracle = app.add_subcommand("oracle-check", "engine vs dense-matrix reference");
    int o_n = 0;
    std::vector<double> o_eps;
    std::uint32_t o_marked = 0;
    std::uint64_t o_steps = 200;
    oracle->add_option("--n", o_n, "single exponent (default: 3 and 4)");
    oracle->add_option("--epsilon", o_eps, "bias values (default: 0 1 1.7 2.5 3)");
    oracle->add_option("--marked", o_marked, "marked vertex")->capture_default_str();
    oracle->add_option("--t", o_steps, "comparison steps")->capture_default_str();

    // export-graph
    auto* graph = app.add_subcommand("export-graph", "write the edge list as CSV");
    int g_n = 4;
    std::string g_output = "edges";
    graph->add_option("--n", g_n, "network exponent")->required();
    graph->add_option("--output", g_output, "output file prefix")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (search->parsed()) {
            return cmd_search(s_n, s_eps, s_marked, s_det, s_model, s_format, s_output,
                              s_snapshots);
        }
        if (sweep_eps->parsed()) {
            return cmd_sweep_eps(e_n, e_grid, e_marked, e_det, e_model, e_format, e_output,
                                 e_optimum);
        }
        if (sweep_n->parsed()) {
            return cmd_sweep_n(n_range, n_eps, n_marked, n_det, n_model, n_format, n_output,
                               n_fits);
        }
        if (fit->parsed()) {
            return cmd_fit(f_input, f_model, f_output);
        }
        if (oracle->parsed()) {
            return cmd_oracle_check(o_n, o_eps, o_marked, o_steps);
        }
        if (graph->parsed()) {
            return cmd_export_graph(g_n, g_output);
        }
    } catch (const UsageError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitRuntime;
    }
    return kExitUsage;
}
