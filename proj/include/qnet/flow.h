#pragma once

#include <string>
#include <vector>

#include "qnet/network.h"

namespace qnet {

inline constexpr double kFlowTolerance = 1e-9;
inline constexpr std::size_t kMaxEnumerationVertices = 24;

/// A step on an augmenting path: either a party or a pass through a hyperedge.
struct PathNode {
    enum class Kind { Party, Hyperedge };
    Kind kind = Kind::Party;
    std::size_t index = 0;  // party index or Hypergraph::edges index

    bool operator==(const PathNode &) const = default;
};

struct AugmentingPath {
    std::vector<PathNode> nodes;
    double amount = 0.0;
};

/// Net flow carried by one (hyper)edge between an ordered endpoint pair.
struct EdgeFlow {
    std::size_t edge = 0;
    PartyIndex from = 0;
    PartyIndex to = 0;
    double amount = 0.0;
};

struct FlowResult {
    PartyIndex source = 0;
    PartyIndex sink = 0;
    double value = 0.0;
    std::vector<EdgeFlow> flows;
    /// Total capacity consumed on each edge, indexed like Hypergraph::edges.
    std::vector<double> edge_usage;
    std::vector<AugmentingPath> augmenting_paths;
};

struct CutResult {
    std::vector<PartyIndex> side_s;
    std::vector<PartyIndex> side_t;
    double capacity = 0.0;
};

struct MaxFlowMinCutWitness {
    FlowResult flow;
    CutResult cut;
    bool equal = false;
    /// Every edge crossing the enumerated cut is used to capacity.
    bool cut_saturated = false;
};

/// Capacity of the channel between two parties: entropy-weighted count of
/// EPR/Schmidt links joining them plus GHZ links containing both.
double capacity(const Network &net, PartyIndex i, PartyIndex j);

/// Edmonds-Karp on the hub-gadget expansion of the hypergraph. Each
/// hyperedge with three or more endpoints becomes an in-hub and an out-hub
/// joined by one arc of the hyperedge's weight.
FlowResult max_flow(const Hypergraph &h, PartyIndex source, PartyIndex sink);

/// Exhaustive search over all source/sink bipartitions; ties go to the
/// lexicographically smallest source side. Throws std::length_error beyond
/// kMaxEnumerationVertices vertices.
CutResult min_cut_enumerate(const Hypergraph &h, PartyIndex source, PartyIndex sink);

double cut_capacity(const Hypergraph &h, const std::vector<bool> &on_source_side);

MaxFlowMinCutWitness verify_maxflow_mincut(const Hypergraph &h, PartyIndex source, PartyIndex sink);

std::string render_path(const Hypergraph &h, const AugmentingPath &path);

/// Thread budget for parallel work: QNET_THREADS if set, else hardware concurrency.
unsigned thread_budget();

}  // namespace qnet
