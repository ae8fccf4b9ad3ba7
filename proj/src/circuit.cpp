#include "gkp/circuit.hpp"

#include <algorithm>
#include <set>

#include <nlohmann/json.hpp>

namespace gkp {

namespace {

struct Adjacency {
    std::map<int, const CircuitVertex*> vertex;
    std::map<int, std::vector<const CircuitEdge*>> in_edges, out_edges;
};

Adjacency build_adjacency(const CircuitGraph& g) {
    Adjacency adj;
    for (const auto& v : g.vertices) adj.vertex[v.id] = &v;
    for (const auto& e : g.edges) {
        adj.in_edges[e.dst].push_back(&e);
        adj.out_edges[e.src].push_back(&e);
    }
    return adj;
}

// Replays the contraction: peel `next`, detach its out-edges to fresh
// inputs. `input_set` holds ids currently acting as input vertices.
bool peel_step(const Adjacency& adj, std::set<int>& input_set, std::set<int>& removed, int next) {
    auto it = adj.in_edges.find(next);
    if (it != adj.in_edges.end()) {
        for (const CircuitEdge* e : it->second) {
            if (!input_set.count(e->src)) return false;  // not in the in-boundary
        }
        for (const CircuitEdge* e : it->second) {
            input_set.erase(e->src);
            removed.insert(e->src);
        }
    }
    removed.insert(next);
    input_set.insert(next);  // stands in for the fresh input vertices feeding its out-edges
    return true;
}

}  // namespace

ValidationReport validate(const CircuitGraph& g) {
    ValidationReport rep;
    auto fail = [&](const std::string& msg) {
        rep.ok = false;
        rep.violations.push_back(msg);
    };
    Adjacency adj = build_adjacency(g);

    std::set<int> ids;
    for (const auto& v : g.vertices)
        if (!ids.insert(v.id).second) fail("duplicate vertex id " + std::to_string(v.id));
    for (const auto& e : g.edges) {
        if (!adj.vertex.count(e.src)) fail("edge " + std::to_string(e.id) + ": unknown src");
        if (!adj.vertex.count(e.dst)) fail("edge " + std::to_string(e.id) + ": unknown dst");
        if (e.dim < 2) fail("edge " + std::to_string(e.id) + ": dimension must be >= 2");
    }
    if (!rep.ok) return rep;

    for (const auto& v : g.vertices) {
        const size_t indeg = adj.in_edges.count(v.id) ? adj.in_edges[v.id].size() : 0;
        const size_t outdeg = adj.out_edges.count(v.id) ? adj.out_edges[v.id].size() : 0;
        switch (v.role) {
            case CircuitVertex::Role::Input:
                if (indeg != 0 || outdeg != 1)
                    fail("input vertex " + std::to_string(v.id) + ": needs in 0 / out 1");
                break;
            case CircuitVertex::Role::Output:
                if (indeg != 1 || outdeg != 0)
                    fail("output vertex " + std::to_string(v.id) + ": needs in 1 / out 0");
                break;
            case CircuitVertex::Role::Interior: {
                if (indeg == 0 || outdeg == 0)
                    fail("interior vertex " + std::to_string(v.id) + ": dangling");
                long in_dim = 1, out_dim = 1;
                for (const CircuitEdge* e : adj.in_edges[v.id]) in_dim *= e->dim;
                for (const CircuitEdge* e : adj.out_edges[v.id]) out_dim *= e->dim;
                if (in_dim != out_dim)
                    fail("interior vertex " + std::to_string(v.id) +
                         ": in/out dimension mismatch (" + std::to_string(in_dim) + " vs " +
                         std::to_string(out_dim) + ")");
                break;
            }
        }
    }

    // connectivity (undirected)
    if (!g.vertices.empty()) {
        std::set<int> seen{g.vertices.front().id};
        std::vector<int> stack{g.vertices.front().id};
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (const auto& e : g.edges) {
                int other = -1;
                if (e.src == v) other = e.dst;
                if (e.dst == v) other = e.src;
                if (other >= 0 && !seen.count(other)) {
                    seen.insert(other);
                    stack.push_back(other);
                }
            }
        }
        if (seen.size() != g.vertices.size()) fail("graph is not connected");
    }

    // acyclicity by Kahn's algorithm
    {
        std::map<int, int> indeg;
        for (const auto& v : g.vertices) indeg[v.id] = 0;
        for (const auto& e : g.edges) ++indeg[e.dst];
        std::vector<int> queue;
        for (auto& [id, deg] : indeg)
            if (deg == 0) queue.push_back(id);
        size_t visited = 0;
        while (!queue.empty()) {
            const int v = queue.back();
            queue.pop_back();
            ++visited;
            if (adj.out_edges.count(v))
                for (const CircuitEdge* e : adj.out_edges[v])
                    if (--indeg[e->dst] == 0) queue.push_back(e->dst);
        }
        if (visited != g.vertices.size()) fail("graph has a directed cycle");
    }
    if (!rep.ok) return rep;

    // declared order, replayed through the contraction rule
    if (!g.order.empty()) {
        std::set<int> interior;
        for (const auto& v : g.vertices)
            if (v.role == CircuitVertex::Role::Interior) interior.insert(v.id);
        if (std::set<int>(g.order.begin(), g.order.end()) != interior) {
            fail("declared order is not a permutation of the interior vertices");
            return rep;
        }
        std::set<int> input_set, removed;
        for (const auto& v : g.vertices)
            if (v.role == CircuitVertex::Role::Input) input_set.insert(v.id);
        for (int vid : g.order) {
            if (!peel_step(adj, input_set, removed, vid)) {
                fail("vertex " + std::to_string(vid) +
                     " is not in the in-boundary at its position in the order");
                return rep;
            }
        }
    }
    return rep;
}

std::vector<int> derive_order(const CircuitGraph& g) {
    Adjacency adj = build_adjacency(g);
    std::set<int> input_set, remaining;
    for (const auto& v : g.vertices) {
        if (v.role == CircuitVertex::Role::Input) input_set.insert(v.id);
        if (v.role == CircuitVertex::Role::Interior) remaining.insert(v.id);
    }
    std::vector<int> order;
    std::set<int> removed;
    while (!remaining.empty()) {
        int pick = -1;
        for (int vid : remaining) {  // ascending id tie-break
            bool boundary = true;
            for (const CircuitEdge* e : adj.in_edges[vid])
                if (!input_set.count(e->src)) {
                    boundary = false;
                    break;
                }
            if (boundary) {
                pick = vid;
                break;
            }
        }
        if (pick < 0) throw ResourceError("derive_order: no admissible vertex (cyclic or invalid)");
        peel_step(adj, input_set, removed, pick);
        remaining.erase(pick);
        order.push_back(pick);
    }
    return order;
}

double total_budget(const CircuitGraph& g) {
    double total = 0.0;
    for (const auto& v : g.vertices) {
        if (v.role != CircuitVertex::Role::Interior) continue;
        auto it = g.vertex_upper.find(v.id);
        if (it == g.vertex_upper.end())
            throw std::domain_error("total_budget: vertex " + std::to_string(v.id) +
                                    " has no certificate upper bound");
        total += it->second;
    }
    return total;
}

CircuitGraph circuit_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    CircuitGraph g;
    for (const auto& v : j.at("vertices")) {
        CircuitVertex cv;
        cv.id = v.at("id").get<int>();
        const std::string role = v.at("role").get<std::string>();
        if (role == "input")
            cv.role = CircuitVertex::Role::Input;
        else if (role == "output")
            cv.role = CircuitVertex::Role::Output;
        else if (role == "interior")
            cv.role = CircuitVertex::Role::Interior;
        else
            throw std::domain_error("circuit_from_json: unknown role '" + role + "'");
        g.vertices.push_back(cv);
    }
    for (const auto& e : j.at("edges")) {
        g.edges.push_back({e.at("id").get<int>(), e.at("src").get<int>(), e.at("dst").get<int>(),
                           e.at("dim").get<int>()});
    }
    if (j.contains("order")) g.order = j.at("order").get<std::vector<int>>();
    if (j.contains("gates")) {
        for (auto it = j.at("gates").begin(); it != j.at("gates").end(); ++it) {
            GateBinding b;
            const auto& spec = it.value();
            if (spec.contains("gate")) b.gate = spec.at("gate").get<std::string>();
            if (spec.contains("bound")) b.bound = spec.at("bound").get<double>();
            if (spec.contains("params")) {
                const auto& pj = spec.at("params");
                GkpParams p;
                p.d = pj.at("d").get<int>();
                p.kappa = pj.at("kappa").get<double>();
                if (pj.value("symmetric", false)) {
                    p = GkpParams::symmetric(p.kappa, p.d);
                } else {
                    p.delta = pj.at("delta").get<double>();
                    p.eps = pj.value("eps", 0.5 / p.d);
                }
                b.params = p;
            }
            g.gates[std::stoi(it.key())] = b;
        }
    }
    return g;
}

std::string circuit_report_json(const CircuitGraph& g, const ValidationReport& report,
                                std::optional<double> budget) {
    nlohmann::json j;
    j["schema"] = "v1";
    j["valid"] = report.ok;
    j["violations"] = report.violations;
    j["n_vertices"] = g.vertices.size();
    j["n_edges"] = g.edges.size();
    if (!g.order.empty()) j["order"] = g.order;
    nlohmann::json per_vertex = nlohmann::json::object();
    for (const auto& [vid, up] : g.vertex_upper) per_vertex[std::to_string(vid)] = up;
    j["vertex_upper"] = per_vertex;
    if (budget) j["budget"] = *budget;
    return j.dump(2);
}

}  // namespace gkp
