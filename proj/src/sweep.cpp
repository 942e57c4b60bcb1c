#include "hn3/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace hn3 {

namespace {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double rmse = 0.0;
    double max_abs_residual = 0.0;
};

LineFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    const auto n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n;
    const double my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 0.0)) {
        throw insufficient_data_error("all abscissae coincide; nothing to fit");
    }
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0, ss_tot = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        ss_res += r * r;
        ss_tot += (y[i] - my) * (y[i] - my);
        fit.max_abs_residual = std::max(fit.max_abs_residual, std::abs(r));
    }
    // Constant data is fit exactly by the constant line.
    fit.r_squared = (ss_tot > 0.0) ? 1.0 - ss_res / ss_tot : 1.0;
    fit.rmse = std::sqrt(ss_res / n);
    return fit;
}

std::vector<SweepRecord> usable(std::span<const SweepRecord> records) {
    std::vector<SweepRecord> out;
    for (const auto& r : records) {
        if (r.peak_found && std::isfinite(r.cost) && r.p_max > 0.0) {
            out.push_back(r);
        }
    }
    return out;
}

FitResult fit_through(std::span<const SweepRecord> records, const char* model,
                      double (*abscissa)(const SweepRecord&),
                      double (*ordinate)(const SweepRecord&)) {
    const auto rows = usable(records);
    std::set<std::uint64_t> sizes;
    for (const auto& r : rows) {
        sizes.insert(r.vertices);
    }
    if (rows.size() < 4 || sizes.size() < 4) {
        throw insufficient_data_error(
            "scaling fits need at least 4 peaked records with distinct N");
    }
    std::vector<double> x, y;
    x.reserve(rows.size());
    y.reserve(rows.size());
    for (const auto& r : rows) {
        x.push_back(abscissa(r));
        y.push_back(ordinate(r));
    }
    const LineFit fit = linear_fit(x, y);
    return FitResult{model,    fit.slope, fit.intercept,
                     fit.r_squared, fit.rmse,  fit.max_abs_residual,
                     static_cast<int>(rows.size())};
}

}  // namespace

SweepRecord to_record(const SearchResult& result) {
    return SweepRecord{result.size.exponent,
                       result.size.vertices,
                       result.epsilon,
                       result.marked,
                       result.t_f,
                       result.p_max,
                       result.cost,
                       result.peak_found};
}

std::vector<SweepRecord> sweep_epsilon(NetworkSize size, std::span<const double> grid,
                                       std::uint32_t marked, const PeakDetectorConfig& det,
                                       CostModel model) {
    std::vector<SweepRecord> records(grid.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(grid.size()); ++i) {
        records[i] = to_record(run_search(size, CoinSpec{grid[i], marked}, det, model));
    }
    return records;
}

std::vector<SweepRecord> sweep_size(const CoinSpec& spec, std::span<const int> exponents,
                                    const PeakDetectorConfig& det, CostModel model) {
    std::vector<SweepRecord> records(exponents.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(exponents.size()); ++i) {
        const NetworkSize size = NetworkSize::from_exponent(exponents[i]);
        records[i] = to_record(run_search(size, spec, det, model));
    }
    return records;
}

std::vector<SweepRecord> sweep_marked_levels(NetworkSize size, double epsilon,
                                             const PeakDetectorConfig& det, CostModel model) {
    std::vector<std::uint32_t> marks;
    for (int level = 0; level < size.exponent; ++level) {
        marks.push_back(std::uint32_t{1} << level);
    }
    marks.push_back(0);
    std::vector<SweepRecord> records(marks.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(marks.size()); ++i) {
        records[i] = to_record(run_search(size, CoinSpec{epsilon, marks[i]}, det, model));
    }
    return records;
}

OptimalEpsilon find_optimal_epsilon(std::span<const SweepRecord> records) {
    const auto rows = usable(records);
    if (rows.size() < 3) {
        throw insufficient_data_error("optimal-epsilon search needs at least 3 peaked records");
    }
    const SweepRecord* best = &rows.front();
    for (const auto& r : rows) {
        if (r.cost < best->cost || (r.cost == best->cost && r.epsilon < best->epsilon)) {
            best = &r;
        }
    }
    return {best->epsilon, best->cost};
}

FitResult fit_cost_exponent(std::span<const SweepRecord> records) {
    return fit_through(
        records, "cost_scaling",
        [](const SweepRecord& r) { return std::log(static_cast<double>(r.vertices)); },
        [](const SweepRecord& r) {
            return std::log(r.cost / std::log(static_cast<double>(r.vertices)));
        });
}

FitResult fit_success_decay(std::span<const SweepRecord> records) {
    return fit_through(
        records, "success_decay",
        [](const SweepRecord& r) {
            return std::log(std::log(static_cast<double>(r.vertices)));
        },
        [](const SweepRecord& r) { return std::log(r.p_max); });
}

}  // namespace hn3
