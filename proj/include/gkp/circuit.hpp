#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gkp/gate_error.hpp"

namespace gkp {

/// Directed acyclic circuit with typed edges. Input vertices have in-degree
/// 0 and out-degree 1, outputs the reverse; interior vertices carry gates.
/// The declared order must satisfy in-boundary peeling: at every step the
/// next vertex' predecessors are all (current) input vertices.
struct CircuitVertex {
    int id = 0;
    enum class Role { Input, Output, Interior } role = Role::Interior;
};

struct CircuitEdge {
    int id = 0;
    int src = 0;
    int dst = 0;
    int dim = 2;
};

/// Gate attached to an interior vertex: either a gate name with code
/// parameters (resolved to a certificate by the caller) or an explicit
/// error bound.
struct GateBinding {
    std::string gate;  // "X", "Z", "F", "P" or empty
    std::optional<GkpParams> params;
    std::optional<double> bound;
};

struct CircuitGraph {
    std::vector<CircuitVertex> vertices;
    std::vector<CircuitEdge> edges;
    std::vector<int> order;  // declared interior order (may be empty)
    std::map<int, GateBinding> gates;
    std::map<int, double> vertex_upper;  // resolved per-vertex upper bounds
};

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> violations;
};

/// Checks connectivity, acyclicity, degree rules, dimension matching at
/// interior vertices, and replays the declared order through the
/// contraction rule. Each violation is reported with the offending
/// vertex or edge.
ValidationReport validate(const CircuitGraph& graph);

/// One admissible order by repeated in-boundary peeling, deterministic
/// tie-break by ascending vertex id. Throws ResourceError when no
/// admissible vertex exists at some step.
std::vector<int> derive_order(const CircuitGraph& graph);

/// Sum of per-vertex certificate upper bounds (idle wires contribute
/// nothing). Throws std::domain_error when an interior vertex has no
/// resolved bound.
double total_budget(const CircuitGraph& graph);

CircuitGraph circuit_from_json(const std::string& text);
std::string circuit_report_json(const CircuitGraph& graph, const ValidationReport& report,
                                std::optional<double> budget);

}  // namespace gkp
