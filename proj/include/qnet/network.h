#pragma once

#include <cstddef>
#include <filesystem>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qnet {

using PartyIndex = std::size_t;

enum class LinkKind {
    GenEpr,      // cos(theta)|00> + sin(theta)|11>
    GenGhz,      // cos(phi)|0..0> + sin(phi)|1..1> over m >= 2 parties
    ReducedGhz,  // two-party reduction of a GHZ state: diag(cos^2, 0, 0, sin^2)
    WState,      // (|100> + |010> + |001>) / sqrt(3)
    ReducedW,    // two-party reduction of the W state
    Schmidt,     // sum_k sqrt(c_k) |kk>
};

std::string_view to_string(LinkKind kind);
std::optional<LinkKind> link_kind_from_string(std::string_view name);

inline constexpr double kDefaultAngle = std::numbers::pi / 4.0;

/// One group of identical entanglement resources shared by `endpoints`.
/// `angle` is theta / phi / vartheta depending on the kind; `coeffs` is only
/// used by Schmidt links.
struct Link {
    LinkKind kind = LinkKind::GenEpr;
    std::vector<PartyIndex> endpoints;
    int multiplicity = 1;
    double angle = kDefaultAngle;
    std::vector<double> coeffs;

    bool operator==(const Link &) const = default;
};

/// Qubits one party holds for a single instance of the link.
std::size_t qubits_per_leg(const Link &link);
std::size_t qubits_per_instance(const Link &link);
bool is_mixed(LinkKind kind);

struct Network {
    std::string name;
    std::vector<std::string> parties;
    std::vector<Link> links;

    std::size_t party_count() const { return parties.size(); }
    std::optional<PartyIndex> find_party(std::string_view label) const;
    /// Throws std::out_of_range for unknown labels.
    PartyIndex party_index(std::string_view label) const;
    std::size_t qubit_count() const;
    bool has_mixed_links() const;

    bool operator==(const Network &) const = default;
};

struct ValidationIssue {
    std::optional<std::size_t> link;  // index into Network::links
    std::string message;
};

std::vector<ValidationIssue> validate(const Network &net);

/// Raised for malformed documents and for networks failing validation.
class NetworkError : public std::runtime_error {
  public:
    explicit NetworkError(const std::string &what, std::vector<ValidationIssue> issues = {});
    const std::vector<ValidationIssue> &issues() const { return issues_; }

  private:
    std::vector<ValidationIssue> issues_;
};

Network parse_network(std::string_view text);
std::string serialize_network(const Network &net);
Network load_network(const std::filesystem::path &path);

/// Global qubit ordering: links in spec order, instances consecutively,
/// legs in endpoint order, and within a leg the most significant qubit first.
struct QubitOwner {
    PartyIndex party;
    std::size_t link;
    std::size_t instance;
    std::size_t leg;
};

std::vector<QubitOwner> qubit_layout(const Network &net);

struct Hyperedge {
    std::vector<PartyIndex> endpoints;  // sorted
    double weight = 0.0;
};

/// Parties as vertices; EPR, GHZ and Schmidt link groups aggregated per
/// endpoint set with entropy-weighted capacity.
struct Hypergraph {
    std::vector<std::string> labels;
    std::vector<Hyperedge> edges;

    std::size_t vertex_count() const { return labels.size(); }
};

Hypergraph associated_hypergraph(const Network &net);

/// Von Neumann entropy of one endpoint's marginal for a single link instance.
/// Zero for the mixed and W kinds, which carry no teleportation capacity here.
double link_capacity(const Link &link);

}  // namespace qnet
