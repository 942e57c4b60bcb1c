#pragma once

#include <span>
#include <string>
#include <vector>

#include "hn3/search.hpp"
#include "hn3/sweep.hpp"
#include "hn3/topology.hpp"
#include "hn3/walker_state.hpp"

namespace hn3 {

// 17-significant-digit formatting so output files reproduce byte for byte.
std::string format_double(double value);

std::string cost_model_name(CostModel model);
CostModel cost_model_from_name(const std::string& name);  // throws std::invalid_argument

// header "t,p"
void write_trace_csv(const std::string& path, const ProbabilityTrace& trace);
void write_trace_json(const std::string& path, const ProbabilityTrace& trace);

void write_result_json(const std::string& path, const SearchResult& result);

// header "n,N,epsilon,k0,t_f,p_max,cost,peak_found"
void write_sweep_csv(const std::string& path, std::span<const SweepRecord> records);
void write_sweep_json(const std::string& path, std::span<const SweepRecord> records);
std::vector<SweepRecord> read_sweep_csv(const std::string& path);

void write_fit_json(const std::string& path, const FitResult& fit);

void write_optimum_json(const std::string& path, const OptimalEpsilon& best);

// header "k,neighbor,edge_type" with edge_type in {backbone, smallworld}
void write_edges_csv(const std::string& path, std::span<const Edge> edges);

// header "a,k,re,im"; debugging snapshot of a full state vector
void write_state_csv(const std::string& path, const WalkerState& state);

}  // namespace hn3
