#pragma once

#include <iosfwd>
#include <string>

#include "adaprox/solvers.hpp"

namespace adaprox {

/// Trace CSV schema, version 1:
///   k,gamma,objective,residual,ell,big_l,cumulative_oracle_calls,wall_time
/// cumulative_oracle_calls counts gradient plus prox evaluations. All
/// columns except wall_time are deterministic given config and seed.
void write_trace_csv(const SolveResult& run, std::ostream& out);
void write_trace_csv(const SolveResult& run, const std::string& path);

/// Full-fidelity JSON trace (includes schedule parameters and, when
/// recorded, iterate/gradient vectors) for the offline certificate checker.
void write_trace_json(const SolveResult& run, const std::string& path);
SolveResult read_trace_json(const std::string& path);

}  // namespace adaprox
