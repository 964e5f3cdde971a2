#include "qnet/flow.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <deque>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace qnet {

namespace {

struct Arc {
    std::size_t to;
    double capacity;
    double flow;
    std::size_t reverse;

    double residual() const { return capacity - flow; }
};

/// Residual network over parties plus two hub vertices per hyperedge.
class GadgetNetwork {
  public:
    explicit GadgetNetwork(const Hypergraph &h) : h_(h), hub_of_edge_(h.edges.size(), kNone) {
        const std::size_t n = h.vertex_count();
        double total = 1.0;
        for (const auto &e : h.edges) total += e.weight;
        const double infinite = total;

        std::size_t vertices = n;
        for (std::size_t k = 0; k < h.edges.size(); ++k) {
            if (h.edges[k].endpoints.size() >= 3) {
                hub_of_edge_[k] = vertices;
                vertices += 2;
            }
        }
        adj_.resize(vertices);
        edge_of_hub_.assign(vertices, kNone);
        pair_arc_.assign(h.edges.size(), kNone);
        hub_arc_.assign(h.edges.size(), kNone);

        for (std::size_t k = 0; k < h.edges.size(); ++k) {
            const Hyperedge &e = h.edges[k];
            if (e.endpoints.size() == 2) {
                pair_arc_[k] = add_arc(e.endpoints[0], e.endpoints[1], e.weight, e.weight);
            } else if (e.endpoints.size() >= 3) {
                const std::size_t in = hub_of_edge_[k], out = in + 1;
                edge_of_hub_[in] = edge_of_hub_[out] = k;
                hub_arc_[k] = add_arc(in, out, e.weight, 0.0);
                for (PartyIndex v : e.endpoints) {
                    add_arc(v, in, infinite, 0.0);
                    add_arc(out, v, infinite, 0.0);
                }
            }
        }
        for (auto &list : adj_) {
            std::stable_sort(list.begin(), list.end(), [this](std::size_t a, std::size_t b) { return arcs_[a].to < arcs_[b].to; });
        }
    }

    FlowResult run(PartyIndex source, PartyIndex sink) {
        FlowResult result;
        result.source = source;
        result.sink = sink;
        std::vector<std::size_t> parent(adj_.size());
        while (true) {
            std::fill(parent.begin(), parent.end(), kNone);
            std::deque<std::size_t> queue{source};
            std::vector<bool> seen(adj_.size(), false);
            seen[source] = true;
            while (!queue.empty() && !seen[sink]) {
                const std::size_t v = queue.front();
                queue.pop_front();
                for (std::size_t a : adj_[v]) {
                    const Arc &arc = arcs_[a];
                    if (seen[arc.to] || arc.residual() < kFlowTolerance) continue;
                    seen[arc.to] = true;
                    parent[arc.to] = a;
                    queue.push_back(arc.to);
                }
            }
            if (!seen[sink]) break;

            double bottleneck = std::numeric_limits<double>::infinity();
            std::vector<std::size_t> vertices{sink};
            for (std::size_t v = sink; v != source; v = arcs_[arcs_[parent[v]].reverse].to) {
                bottleneck = std::min(bottleneck, arcs_[parent[v]].residual());
                vertices.push_back(arcs_[arcs_[parent[v]].reverse].to);
            }
            for (std::size_t v = sink; v != source; v = arcs_[arcs_[parent[v]].reverse].to) {
                Arc &arc = arcs_[parent[v]];
                arc.flow += bottleneck;
                arcs_[arc.reverse].flow -= bottleneck;
            }
            std::reverse(vertices.begin(), vertices.end());
            result.augmenting_paths.push_back({to_path(vertices), bottleneck});
            result.value += bottleneck;
        }
        cancel_hub_loops();
        collect_flows(result);
        return result;
    }

  private:
    static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

    std::size_t add_arc(std::size_t from, std::size_t to, double cap, double reverse_cap) {
        const std::size_t id = arcs_.size();
        arcs_.push_back({to, cap, 0.0, id + 1});
        arcs_.push_back({from, reverse_cap, 0.0, id});
        adj_[from].push_back(id);
        adj_[to].push_back(id + 1);
        return id;
    }

    std::vector<PathNode> to_path(const std::vector<std::size_t> &vertices) const {
        std::vector<PathNode> nodes;
        for (std::size_t v : vertices) {
            if (v < h_.vertex_count()) {
                nodes.push_back({PathNode::Kind::Party, v});
            } else {
                PathNode hub{PathNode::Kind::Hyperedge, edge_of_hub_[v]};
                if (nodes.empty() || !(nodes.back() == hub)) nodes.push_back(hub);
            }
        }
        return nodes;
    }

    // Arc index carrying endpoint -> in-hub, and out-hub -> endpoint.
    std::pair<std::size_t, std::size_t> hub_legs(std::size_t edge, PartyIndex v) const {
        const std::size_t in = hub_of_edge_[edge], out = in + 1;
        std::size_t enter = kNone, leave = kNone;
        for (std::size_t a : adj_[v]) {
            if (arcs_[a].to == in && arcs_[a].capacity > 0.0) enter = a;
        }
        for (std::size_t a : adj_[out]) {
            if (arcs_[a].to == v && arcs_[a].capacity > 0.0) leave = a;
        }
        return {enter, leave};
    }

    // Flow entering and leaving a hub at the same endpoint is a loop that
    // consumes hyperedge capacity without moving anything.
    void cancel_hub_loops() {
        for (std::size_t k = 0; k < h_.edges.size(); ++k) {
            if (hub_of_edge_[k] == kNone) continue;
            for (PartyIndex v : h_.edges[k].endpoints) {
                auto [enter, leave] = hub_legs(k, v);
                const double loop = std::min(arcs_[enter].flow, arcs_[leave].flow);
                if (loop <= 0.0) continue;
                for (std::size_t a : {enter, leave, hub_arc_[k]}) {
                    arcs_[a].flow -= loop;
                    arcs_[arcs_[a].reverse].flow += loop;
                }
            }
        }
    }

    void collect_flows(FlowResult &result) const {
        result.edge_usage.assign(h_.edges.size(), 0.0);
        for (std::size_t k = 0; k < h_.edges.size(); ++k) {
            const Hyperedge &e = h_.edges[k];
            if (pair_arc_[k] != kNone) {
                const double f = arcs_[pair_arc_[k]].flow;
                result.edge_usage[k] = std::abs(f);
                if (f > kFlowTolerance) result.flows.push_back({k, e.endpoints[0], e.endpoints[1], f});
                if (f < -kFlowTolerance) result.flows.push_back({k, e.endpoints[1], e.endpoints[0], -f});
            } else if (hub_arc_[k] != kNone) {
                result.edge_usage[k] = arcs_[hub_arc_[k]].flow;
                std::vector<std::pair<PartyIndex, double>> in, out;
                for (PartyIndex v : e.endpoints) {
                    auto [enter, leave] = hub_legs(k, v);
                    const double net = arcs_[leave].flow - arcs_[enter].flow;
                    if (net < -kFlowTolerance) in.emplace_back(v, -net);
                    if (net > kFlowTolerance) out.emplace_back(v, net);
                }
                std::size_t a = 0, b = 0;
                while (a < in.size() && b < out.size()) {
                    const double amount = std::min(in[a].second, out[b].second);
                    result.flows.push_back({k, in[a].first, out[b].first, amount});
                    in[a].second -= amount;
                    out[b].second -= amount;
                    if (in[a].second <= kFlowTolerance) ++a;
                    if (out[b].second <= kFlowTolerance) ++b;
                }
            }
        }
    }

    const Hypergraph &h_;
    std::vector<Arc> arcs_;
    std::vector<std::vector<std::size_t>> adj_;
    std::vector<std::size_t> hub_of_edge_;
    std::vector<std::size_t> edge_of_hub_;
    std::vector<std::size_t> pair_arc_;
    std::vector<std::size_t> hub_arc_;
};

void check_terminals(const Hypergraph &h, PartyIndex source, PartyIndex sink) {
    if (source >= h.vertex_count() || sink >= h.vertex_count()) throw std::out_of_range("source or sink is not a vertex");
    if (source == sink) throw std::invalid_argument("source and sink must differ");
}

std::vector<PartyIndex> members(std::uint32_t mask, std::size_t n) {
    std::vector<PartyIndex> out;
    for (std::size_t v = 0; v < n; ++v) {
        if (mask >> v & 1u) out.push_back(v);
    }
    return out;
}

struct CutCandidate {
    std::uint32_t side_s = 0;
    double capacity = std::numeric_limits<double>::infinity();
};

bool better(const CutCandidate &a, const CutCandidate &b, std::size_t n) {
    if (a.capacity < b.capacity - kFlowTolerance) return true;
    if (a.capacity > b.capacity + kFlowTolerance) return false;
    return members(a.side_s, n) < members(b.side_s, n);
}

}  // namespace

unsigned thread_budget() {
    unsigned budget = std::max(1u, std::thread::hardware_concurrency());
    if (const char *env = std::getenv("QNET_THREADS")) {
        char *end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v >= 1) budget = static_cast<unsigned>(std::min<long>(v, budget));
    }
    return budget;
}

double capacity(const Network &net, PartyIndex i, PartyIndex j) {
    if (i >= net.party_count() || j >= net.party_count()) throw std::out_of_range("unknown party index");
    if (i == j) throw std::invalid_argument("capacity requires distinct parties");
    double total = 0.0;
    for (const auto &link : net.links) {
        const auto &ep = link.endpoints;
        const bool both = std::find(ep.begin(), ep.end(), i) != ep.end() && std::find(ep.begin(), ep.end(), j) != ep.end();
        if (!both) continue;
        if (link.kind == LinkKind::GenGhz || ((link.kind == LinkKind::GenEpr || link.kind == LinkKind::Schmidt) && ep.size() == 2)) {
            total += link.multiplicity * link_capacity(link);
        }
    }
    return total;
}

FlowResult max_flow(const Hypergraph &h, PartyIndex source, PartyIndex sink) {
    check_terminals(h, source, sink);
    GadgetNetwork g(h);
    return g.run(source, sink);
}

double cut_capacity(const Hypergraph &h, const std::vector<bool> &on_source_side) {
    double total = 0.0;
    for (const auto &e : h.edges) {
        bool s = false, t = false;
        for (PartyIndex v : e.endpoints) (on_source_side.at(v) ? s : t) = true;
        if (s && t) total += e.weight;
    }
    return total;
}

CutResult min_cut_enumerate(const Hypergraph &h, PartyIndex source, PartyIndex sink) {
    check_terminals(h, source, sink);
    const std::size_t n = h.vertex_count();
    if (n > kMaxEnumerationVertices) {
        throw std::length_error("min-cut enumeration limited to " + std::to_string(kMaxEnumerationVertices) + " vertices");
    }
    std::vector<PartyIndex> free;
    for (std::size_t v = 0; v < n; ++v) {
        if (v != source && v != sink) free.push_back(v);
    }
    std::vector<std::pair<std::uint32_t, double>> edges;
    for (const auto &e : h.edges) {
        std::uint32_t mask = 0;
        for (PartyIndex v : e.endpoints) mask |= 1u << v;
        edges.emplace_back(mask, e.weight);
    }
    const std::uint64_t total = std::uint64_t{1} << free.size();
    const std::uint32_t all = n == 32 ? ~0u : (1u << n) - 1u;

    auto scan = [&](std::uint64_t begin, std::uint64_t end) {
        CutCandidate best;
        for (std::uint64_t m = begin; m < end; ++m) {
            std::uint32_t side = 1u << source;
            for (std::size_t b = 0; b < free.size(); ++b) {
                if (m >> b & 1u) side |= 1u << free[b];
            }
            double cap = 0.0;
            for (const auto &[mask, w] : edges) {
                if ((mask & side) && (mask & (all & ~side))) cap += w;
            }
            CutCandidate c{side, cap};
            if (better(c, best, n)) best = c;
        }
        return best;
    };

    const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(thread_budget(), std::max<std::uint64_t>(1, total / 4096)));
    CutCandidate best;
    if (workers <= 1) {
        best = scan(0, total);
    } else {
        std::vector<CutCandidate> partial(workers);
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            const std::uint64_t lo = total * w / workers, hi = total * (w + 1) / workers;
            pool.emplace_back([&, w, lo, hi] { partial[w] = scan(lo, hi); });
        }
        for (auto &t : pool) t.join();
        for (const auto &c : partial) {
            if (better(c, best, n)) best = c;
        }
    }

    CutResult cut;
    cut.capacity = best.capacity;
    for (std::size_t v = 0; v < n; ++v) (best.side_s >> v & 1u ? cut.side_s : cut.side_t).push_back(v);
    return cut;
}

MaxFlowMinCutWitness verify_maxflow_mincut(const Hypergraph &h, PartyIndex source, PartyIndex sink) {
    MaxFlowMinCutWitness w;
    w.cut = min_cut_enumerate(h, source, sink);
    w.flow = max_flow(h, source, sink);
    w.equal = std::abs(w.flow.value - w.cut.capacity) <= kFlowTolerance;

    std::vector<bool> on_s(h.vertex_count(), false);
    for (PartyIndex v : w.cut.side_s) on_s[v] = true;
    w.cut_saturated = true;
    for (std::size_t k = 0; k < h.edges.size(); ++k) {
        const auto &e = h.edges[k];
        bool s = false, t = false;
        for (PartyIndex v : e.endpoints) (on_s[v] ? s : t) = true;
        if (!(s && t)) continue;
        if (w.flow.edge_usage[k] < e.weight - kFlowTolerance) w.cut_saturated = false;
        for (const auto &f : w.flow.flows) {
            if (f.edge == k && !on_s[f.from] && on_s[f.to]) w.cut_saturated = false;
        }
    }
    return w;
}

std::string render_path(const Hypergraph &h, const AugmentingPath &path) {
    std::ostringstream out;
    for (std::size_t i = 0; i < path.nodes.size(); ++i) {
        if (i) out << " -> ";
        const PathNode &node = path.nodes[i];
        if (node.kind == PathNode::Kind::Party) {
            out << h.labels[node.index];
        } else {
            out << '{';
            const auto &ep = h.edges[node.index].endpoints;
            for (std::size_t j = 0; j < ep.size(); ++j) out << (j ? "," : "") << h.labels[ep[j]];
            out << '}';
        }
    }
    return out.str();
}

}  // namespace qnet
