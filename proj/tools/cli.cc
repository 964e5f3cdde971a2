#include "cli.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qnet/classify.h"
#include "qnet/flow.h"
#include "qnet/monogamy.h"
#include "qnet/oracle.h"

namespace qnet::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr double kOracleTolerance = 1e-9;

/// Thrown for bad user input; maps to exit code 2.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fixed(double v, int digits = 6) {
    if (std::abs(v) < 0.5 * std::pow(10.0, -digits)) v = 0.0;
    std::ostringstream out;
    out << std::fixed << std::setprecision(digits) << v;
    return out.str();
}

/// Up to six decimals with trailing zeros removed.
std::string compact(double v) {
    std::string s = fixed(v);
    s.erase(s.find_last_not_of('0') + 1);
    if (s.back() == '.') s.pop_back();
    return s;
}

std::string vector_text(const std::vector<double> &v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + compact(v[i]);
    return s + ")";
}

std::string set_text(const std::vector<std::string> &labels, const std::vector<PartyIndex> &members) {
    std::string s = "{";
    for (std::size_t i = 0; i < members.size(); ++i) s += (i ? ", " : "") + labels[members[i]];
    return s + "}";
}

/// Left-aligned columns separated by two spaces; trailing padding trimmed.
class Table {
  public:
    explicit Table(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
    void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

    void print(std::ostream &out, const std::string &indent = "") const {
        std::vector<std::size_t> width;
        for (const auto &row : rows_) {
            width.resize(std::max(width.size(), row.size()), 0);
            for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
        }
        for (const auto &row : rows_) {
            std::string line = indent;
            for (std::size_t c = 0; c < row.size(); ++c) {
                line += row[c];
                if (c + 1 < row.size()) line += std::string(width[c] - row[c].size() + 2, ' ');
            }
            out << line << '\n';
        }
    }

  private:
    std::vector<std::vector<std::string>> rows_;
};

struct FunctionalFlags {
    std::optional<double> renyi;
    std::optional<double> tsallis;
    std::vector<double> unified;

    void attach(CLI::App *cmd) {
        auto *r = cmd->add_option("--renyi", renyi, "Renyi order alpha");
        auto *t = cmd->add_option("--tsallis", tsallis, "Tsallis order q");
        auto *u = cmd->add_option("--unified", unified, "Unified entropy parameters q s")->expected(2);
        r->excludes(t)->excludes(u);
        t->excludes(u);
    }

    EntropyFunctional resolve() const {
        try {
            if (renyi) return EntropyFunctional::renyi(*renyi);
            if (tsallis) return EntropyFunctional::tsallis(*tsallis);
            if (unified.size() == 2) return EntropyFunctional::unified(unified[0], unified[1]);
        } catch (const std::invalid_argument &e) {
            throw InputError(e.what());
        }
        return EntropyFunctional::von_neumann();
    }
};

std::string base_name(const std::string &path) { return std::filesystem::path(path).filename().string(); }

Network load(const std::string &path) { return load_network(path); }

PartyIndex party_of(const Network &net, const std::string &label) {
    auto idx = net.find_party(label);
    if (!idx) throw InputError("unknown party '" + label + "' in network '" + net.name + "'");
    return *idx;
}

json envelope(const std::string &command, const std::vector<std::string> &inputs, json payload) {
    json doc;
    doc["command"] = command;
    json files = json::array();
    for (const auto &i : inputs) files.push_back(base_name(i));
    doc["inputs"] = std::move(files);
    doc["payload"] = std::move(payload);
    return doc;
}

json functional_json(const EntropyFunctional &f) { return f.name(); }

std::string network_summary(const Network &net) {
    std::ostringstream s;
    s << net.name << " (" << net.party_count() << " parties, " << net.links.size() << " link groups, " << net.qubit_count()
      << " qubits)";
    return s.str();
}

// ---------------------------------------------------------------- analyze

struct AnalyzeArgs {
    std::string file;
    FunctionalFlags functional;
    bool literal_w = false;
    bool oracle = false;
};

int cmd_analyze(const AnalyzeArgs &a, bool as_json, std::ostream &out) {
    const Network net = load(a.file);
    const EntropyFunctional f = a.functional.resolve();
    MeasureOptions opts;
    opts.literal_reduced_w = a.literal_w;

    const auto vec = characteristic_vector(net);
    const auto reports = monogamy_sweep(net, f, opts);
    const bool all_hold = std::all_of(reports.begin(), reports.end(), [](const auto &r) { return r.holds; });

    std::optional<double> oracle_diff;
    if (a.oracle) {
        const auto state = oracle::build_global_state(net, opts);
        double worst = 0.0;
        for (PartyIndex p = 0; p < net.party_count(); ++p) {
            const std::vector<PartyIndex> one{p};
            const double dense = entropy(oracle::spectrum_of(oracle::reduced_density(state, one)), f);
            worst = std::max(worst, std::abs(dense - marginal_entropy_exact(net, p, f)));
        }
        oracle_diff = worst;
    }
    const bool oracle_ok = !oracle_diff || *oracle_diff <= kOracleTolerance;
    const bool ok = all_hold && oracle_ok;

    if (as_json) {
        json payload;
        payload["network"] = net.name;
        payload["functional"] = functional_json(f);
        payload["characteristic_vector"] = vec.entries;
        json list = json::array();
        for (const auto &r : reports) {
            json j;
            j["party"] = net.parties[r.party];
            j["functional"] = functional_json(r.functional);
            j["lhs"] = r.lhs;
            j["rhs"] = r.rhs;
            j["slack"] = r.slack;
            j["equality_predicted"] = r.equality_predicted;
            j["holds"] = r.holds;
            j["lhs_bound"] = to_string(r.lhs_bound);
            j["rhs_bound"] = to_string(r.rhs_bound);
            if (r.w_hypothesis.applicable()) {
                j["w_states"] = r.w_hypothesis.w_states;
                j["multiparty_ghz"] = r.w_hypothesis.multiparty_ghz;
                j["outside_w_hypothesis"] = r.outside_w_hypothesis();
            }
            if (r.exact_lhs) {
                j["exact_lhs"] = *r.exact_lhs;
                j["exact_rhs"] = *r.exact_rhs;
                j["exact_slack"] = *r.exact_slack();
            }
            list.push_back(std::move(j));
        }
        payload["reports"] = std::move(list);
        if (oracle_diff) payload["oracle_max_abs_diff"] = *oracle_diff;
        payload["verdict"] = ok ? "HOLDS" : "VIOLATED";
        out << envelope("analyze", {a.file}, std::move(payload)).dump(2) << '\n';
        return ok ? kOk : kPropertyViolated;
    }

    out << "network: " << network_summary(net) << '\n';
    out << "functional: " << f.name() << '\n';
    out << "characteristic vector: " << vector_text(vec.entries) << "\n\n";

    const bool non_additive = !f.additive();
    std::vector<std::string> header{"party", "lhs", "rhs", "slack", "bound", "equality", "holds"};
    if (non_additive) header.insert(header.end(), {"exact-lhs", "exact-rhs", "exact-slack"});
    header.push_back("notes");
    Table table(header);
    for (const auto &r : reports) {
        std::string bound = r.lhs_bound == r.rhs_bound ? std::string(to_string(r.lhs_bound))
                                                       : std::string(to_string(r.lhs_bound)) + "/" + std::string(to_string(r.rhs_bound));
        std::vector<std::string> row{net.parties[r.party], fixed(r.lhs), fixed(r.rhs), fixed(r.slack), bound,
                                     r.equality_predicted ? "predicted" : "-", r.holds ? "yes" : "NO"};
        if (non_additive) row.insert(row.end(), {fixed(*r.exact_lhs), fixed(*r.exact_rhs), fixed(*r.exact_slack())});
        std::string note = "-";
        if (r.w_hypothesis.applicable()) {
            note = (r.outside_w_hypothesis() ? "outside W hypothesis (" : "W hypothesis ok (") + std::to_string(r.w_hypothesis.w_states) +
                   " W vs " + std::to_string(r.w_hypothesis.multiparty_ghz) + " GHZ)";
        }
        row.push_back(note);
        table.add(std::move(row));
    }
    table.print(out);
    if (oracle_diff) {
        out << "\noracle check: ";
        if (oracle_ok) {
            out << "ok (tolerance 1e-9)\n";
        } else {
            out << "MISMATCH (max |dense - fast| = " << std::scientific << std::setprecision(2) << *oracle_diff << std::defaultfloat << ")\n";
        }
    }
    out << "\nverdict: " << (ok ? "HOLDS" : "VIOLATED") << '\n';
    return ok ? kOk : kPropertyViolated;
}

// ---------------------------------------------------------------- maxflow / mincut

struct FlowArgs {
    std::string file;
    std::string source;
    std::string sink;
    bool trace = false;
    bool verify = false;
};

json cut_json(const Hypergraph &h, const CutResult &cut) {
    json j;
    json s = json::array(), t = json::array();
    for (PartyIndex v : cut.side_s) s.push_back(h.labels[v]);
    for (PartyIndex v : cut.side_t) t.push_back(h.labels[v]);
    j["side_s"] = std::move(s);
    j["side_t"] = std::move(t);
    j["capacity"] = cut.capacity;
    return j;
}

void print_cut(std::ostream &out, const Hypergraph &h, const CutResult &cut) {
    out << "min cut: " << compact(cut.capacity) << '\n';
    out << "  side_s: " << set_text(h.labels, cut.side_s) << '\n';
    out << "  side_t: " << set_text(h.labels, cut.side_t) << '\n';
    std::vector<bool> on_s(h.vertex_count(), false);
    for (PartyIndex v : cut.side_s) on_s[v] = true;
    Table crossing({"crossing edge", "weight"});
    for (const auto &e : h.edges) {
        bool s = false, t = false;
        for (PartyIndex v : e.endpoints) (on_s[v] ? s : t) = true;
        if (s && t) crossing.add({set_text(h.labels, e.endpoints), compact(e.weight)});
    }
    crossing.print(out, "  ");
}

std::pair<PartyIndex, PartyIndex> terminals(const Network &net, const FlowArgs &a) {
    const PartyIndex s = party_of(net, a.source), t = party_of(net, a.sink);
    if (s == t) throw InputError("source and sink must be different parties");
    return {s, t};
}

int cmd_maxflow(const FlowArgs &a, bool as_json, std::ostream &out) {
    const Network net = load(a.file);
    const auto [s, t] = terminals(net, a);
    const Hypergraph h = associated_hypergraph(net);

    std::optional<MaxFlowMinCutWitness> witness;
    FlowResult flow;
    if (a.verify) {
        witness = verify_maxflow_mincut(h, s, t);
        flow = witness->flow;
    } else {
        flow = max_flow(h, s, t);
    }
    const bool ok = !witness || (witness->equal && witness->cut_saturated);

    if (as_json) {
        json payload;
        payload["network"] = net.name;
        payload["source"] = a.source;
        payload["sink"] = a.sink;
        payload["value"] = flow.value;
        if (a.trace) {
            json paths = json::array();
            for (const auto &p : flow.augmenting_paths) paths.push_back({{"path", render_path(h, p)}, {"amount", p.amount}});
            payload["augmenting_paths"] = std::move(paths);
            json flows = json::array();
            for (const auto &f : flow.flows) {
                flows.push_back({{"edge", set_text(h.labels, h.edges[f.edge].endpoints)},
                                 {"from", h.labels[f.from]},
                                 {"to", h.labels[f.to]},
                                 {"amount", f.amount}});
            }
            payload["flows"] = std::move(flows);
        }
        if (witness) {
            payload["min_cut"] = cut_json(h, witness->cut);
            payload["equal"] = witness->equal;
            payload["cut_saturated"] = witness->cut_saturated;
        }
        out << envelope("maxflow", {a.file}, std::move(payload)).dump(2) << '\n';
        return ok ? kOk : kPropertyViolated;
    }

    out << "network: " << network_summary(net) << '\n';
    out << "source: " << a.source << "  sink: " << a.sink << '\n';
    out << "max flow: " << compact(flow.value) << '\n';
    if (a.trace) {
        out << "\naugmenting paths:\n";
        Table paths({"iter", "pushed", "path"});
        for (std::size_t i = 0; i < flow.augmenting_paths.size(); ++i) {
            const auto &p = flow.augmenting_paths[i];
            paths.add({std::to_string(i + 1), compact(p.amount), render_path(h, p)});
        }
        paths.print(out, "  ");
        out << "\nedge flows:\n";
        Table flows({"edge", "from", "to", "flow", "capacity"});
        for (const auto &f : flow.flows) {
            flows.add({set_text(h.labels, h.edges[f.edge].endpoints), h.labels[f.from], h.labels[f.to], compact(f.amount),
                       compact(h.edges[f.edge].weight)});
        }
        flows.print(out, "  ");
    }
    if (witness) {
        out << '\n';
        print_cut(out, h, witness->cut);
        out << "max-flow = min-cut: " << (witness->equal ? "yes" : "NO") << " (" << compact(flow.value) << " = "
            << compact(witness->cut.capacity) << ")\n";
        out << "crossing edges saturated: " << (witness->cut_saturated ? "yes" : "NO") << '\n';
    }
    return ok ? kOk : kPropertyViolated;
}

int cmd_mincut(const FlowArgs &a, bool as_json, std::ostream &out) {
    const Network net = load(a.file);
    const auto [s, t] = terminals(net, a);
    const Hypergraph h = associated_hypergraph(net);
    const CutResult cut = min_cut_enumerate(h, s, t);
    if (as_json) {
        json payload = cut_json(h, cut);
        payload["network"] = net.name;
        payload["source"] = a.source;
        payload["sink"] = a.sink;
        out << envelope("mincut", {a.file}, std::move(payload)).dump(2) << '\n';
        return kOk;
    }
    out << "network: " << network_summary(net) << '\n';
    out << "source: " << a.source << "  sink: " << a.sink << '\n';
    print_cut(out, h, cut);
    return kOk;
}

// ---------------------------------------------------------------- classify

struct ClassifyArgs {
    std::vector<std::string> files;
    bool discriminators = false;
    bool unlabeled = false;
};

struct Discriminators {
    double joint_entropy;
    double dual_total_correlation;
    std::optional<double> literal_mutual_information;
    double doubled_entropy;
};

Discriminators discriminators_of(const Network &net) {
    const auto dist = outcome_distribution(net);
    std::vector<PartyIndex> all(net.party_count());
    for (PartyIndex p = 0; p < all.size(); ++p) all[p] = p;
    Discriminators d{};
    d.joint_entropy = dist.shannon_entropy(all);
    d.dual_total_correlation = all.size() >= 2 ? dual_total_correlation(dist, all) : 0.0;
    if (all.size() == 3) d.literal_mutual_information = mutual_information_literal(dist, all);
    d.doubled_entropy = doubled_entropy(net, all);
    return d;
}

int cmd_classify(const ClassifyArgs &a, bool as_json, std::ostream &out) {
    if (a.files.size() < 2) throw InputError("classify needs at least two network files");
    std::vector<Network> nets;
    for (const auto &f : a.files) nets.push_back(load(f));
    const Alignment align = a.unlabeled ? Alignment::Unlabeled : Alignment::ByLabel;

    struct PairDecision {
        std::size_t i, j;
        EquivalenceDecision d;
    };
    std::vector<PairDecision> pairs;
    for (std::size_t i = 0; i < nets.size(); ++i) {
        for (std::size_t j = i + 1; j < nets.size(); ++j) pairs.push_back({i, j, lu_equivalent(nets[i], nets[j], align)});
    }
    std::vector<std::optional<Discriminators>> disc(nets.size());
    if (a.discriminators) {
        for (const auto &p : pairs) {
            if (p.d.decision != Equivalence::OutsideHypothesis) continue;
            for (std::size_t k : {p.i, p.j}) {
                if (!disc[k]) disc[k] = discriminators_of(nets[k]);
            }
        }
    }

    if (as_json) {
        json payload;
        payload["alignment"] = a.unlabeled ? "unlabeled" : "by-label";
        json networks = json::array();
        for (std::size_t k = 0; k < nets.size(); ++k) {
            json n;
            n["file"] = base_name(a.files[k]);
            n["name"] = nets[k].name;
            n["parties"] = nets[k].parties;
            n["characteristic_vector"] = characteristic_vector(nets[k]).entries;
            n["within_hypothesis"] = within_lu_hypothesis(nets[k]);
            if (disc[k]) {
                n["joint_entropy"] = disc[k]->joint_entropy;
                n["dual_total_correlation"] = disc[k]->dual_total_correlation;
                if (disc[k]->literal_mutual_information) n["literal_mutual_information"] = *disc[k]->literal_mutual_information;
                n["doubled_entropy"] = disc[k]->doubled_entropy;
            }
            networks.push_back(std::move(n));
        }
        payload["networks"] = std::move(networks);
        json decisions = json::array();
        for (const auto &p : pairs) {
            json d;
            d["a"] = nets[p.i].name;
            d["b"] = nets[p.j].name;
            d["decision"] = to_string(p.d.decision);
            d["reason"] = p.d.reason;
            if (disc[p.i] && disc[p.j]) {
                d["discriminators_differ"] =
                    std::abs(disc[p.i]->dual_total_correlation - disc[p.j]->dual_total_correlation) > kVectorTolerance ||
                    std::abs(disc[p.i]->doubled_entropy - disc[p.j]->doubled_entropy) > kVectorTolerance;
            }
            decisions.push_back(std::move(d));
        }
        payload["decisions"] = std::move(decisions);
        out << envelope("classify", a.files, std::move(payload)).dump(2) << '\n';
        return kOk;
    }

    Table summary({"network", "file", "parties", "characteristic vector", "hypothesis"});
    for (std::size_t k = 0; k < nets.size(); ++k) {
        std::string parties;
        for (std::size_t p = 0; p < nets[k].parties.size(); ++p) parties += (p ? "," : "") + nets[k].parties[p];
        summary.add({nets[k].name, base_name(a.files[k]), parties, vector_text(characteristic_vector(nets[k]).entries),
                     within_lu_hypothesis(nets[k]) ? "yes" : "no"});
    }
    summary.print(out);
    out << "\npairwise decisions (" << (a.unlabeled ? "unlabeled" : "by label") << "):\n";
    Table decisions({"a", "b", "decision", "reason"});
    for (const auto &p : pairs) decisions.add({nets[p.i].name, nets[p.j].name, std::string(to_string(p.d.decision)), p.d.reason});
    decisions.print(out, "  ");

    if (a.discriminators) {
        out << "\ndiscriminators:\n";
        bool any = false;
        Table t({"network", "H(joint)", "dual-total-corr", "I(X:Y:Z) literal", "doubled-entropy"});
        for (std::size_t k = 0; k < nets.size(); ++k) {
            if (!disc[k]) continue;
            any = true;
            t.add({nets[k].name, compact(disc[k]->joint_entropy), compact(disc[k]->dual_total_correlation),
                   disc[k]->literal_mutual_information ? compact(*disc[k]->literal_mutual_information) : "-",
                   compact(disc[k]->doubled_entropy)});
        }
        if (any) {
            t.print(out, "  ");
            for (const auto &p : pairs) {
                if (!disc[p.i] || !disc[p.j]) continue;
                const bool differ = std::abs(disc[p.i]->dual_total_correlation - disc[p.j]->dual_total_correlation) > kVectorTolerance ||
                                    std::abs(disc[p.i]->doubled_entropy - disc[p.j]->doubled_entropy) > kVectorTolerance;
                out << "  " << nets[p.i].name << " vs " << nets[p.j].name << ": "
                    << (differ ? "discriminators differ" : "discriminators agree") << '\n';
            }
        } else {
            out << "  (no pair outside the hypothesis)\n";
        }
    }
    return kOk;
}

// ---------------------------------------------------------------- mutualinfo

struct MutualInfoArgs {
    std::string file;
    std::vector<std::string> parties;
    bool oracle = false;
};

int cmd_mutualinfo(const MutualInfoArgs &a, bool as_json, std::ostream &out) {
    const Network net = load(a.file);
    std::vector<PartyIndex> parties;
    if (a.parties.empty()) {
        for (PartyIndex p = 0; p < net.party_count(); ++p) parties.push_back(p);
    } else {
        for (const auto &label : a.parties) parties.push_back(party_of(net, label));
    }
    if (parties.size() < 2) throw InputError("mutualinfo needs at least two parties");
    const auto dist = outcome_distribution(net);
    const double joint = dist.shannon_entropy(parties);
    const double dtc = dual_total_correlation(dist, parties);
    std::optional<double> literal;
    if (parties.size() == 3) literal = mutual_information_literal(dist, parties);
    const double doubled = doubled_entropy(net, parties);
    std::optional<double> dense;
    if (a.oracle) {
        const auto traced = oracle::double_and_trace(net);
        dense = entropy(oracle::spectrum_of(oracle::reduced_density(traced, parties)), EntropyFunctional::von_neumann());
    }
    const bool ok = !dense || std::abs(*dense - doubled) <= kOracleTolerance;

    std::vector<std::string> labels;
    for (PartyIndex p : parties) labels.push_back(net.parties[p]);
    if (as_json) {
        json payload;
        payload["network"] = net.name;
        payload["parties"] = labels;
        payload["support_size"] = dist.support.size();
        payload["joint_entropy"] = joint;
        payload["dual_total_correlation"] = dtc;
        if (literal) payload["literal_mutual_information"] = *literal;
        payload["doubled_entropy"] = doubled;
        if (dense) payload["oracle_doubled_entropy"] = *dense;
        out << envelope("mutualinfo", {a.file}, std::move(payload)).dump(2) << '\n';
        return ok ? kOk : kPropertyViolated;
    }
    out << "network: " << network_summary(net) << '\n';
    std::string joined;
    for (std::size_t i = 0; i < labels.size(); ++i) joined += (i ? ", " : "") + labels[i];
    out << "parties: " << joined << '\n';
    out << "outcome support: " << dist.support.size() << '\n';
    Table t({"quantity", "bits"});
    t.add({"joint entropy", compact(joint)});
    t.add({"dual total correlation", compact(dtc)});
    if (literal) t.add({"tripartite I (literal)", compact(*literal)});
    t.add({"doubled entropy", compact(doubled)});
    if (dense) t.add({"doubled entropy (oracle)", compact(*dense)});
    t.print(out);
    if (dense) out << "oracle check: " << (ok ? "ok" : "MISMATCH") << '\n';
    return ok ? kOk : kPropertyViolated;
}

// ---------------------------------------------------------------- oracle-check

struct OracleArgs {
    std::string file;
    FunctionalFlags functional;
    bool literal_w = false;
};

int cmd_oracle_check(const OracleArgs &a, bool as_json, std::ostream &out) {
    const Network net = load(a.file);
    const EntropyFunctional f = a.functional.resolve();
    MeasureOptions opts;
    opts.literal_reduced_w = a.literal_w;
    const auto state = oracle::build_global_state(net, opts);

    struct Row {
        PartyIndex party;
        double fast;
        double dense;
    };
    std::vector<Row> rows;
    double worst = 0.0;
    for (PartyIndex p = 0; p < net.party_count(); ++p) {
        const std::vector<PartyIndex> one{p};
        const double dense = entropy(oracle::spectrum_of(oracle::reduced_density(state, one)), f);
        const double fast = marginal_entropy_exact(net, p, f);
        worst = std::max(worst, std::abs(dense - fast));
        rows.push_back({p, fast, dense});
    }
    const bool ok = worst <= kOracleTolerance;

    if (as_json) {
        json payload;
        payload["network"] = net.name;
        payload["functional"] = functional_json(f);
        payload["state"] = state.is_pure() ? "pure" : "mixed";
        json list = json::array();
        for (const auto &r : rows) list.push_back({{"party", net.parties[r.party]}, {"fast", r.fast}, {"oracle", r.dense}});
        payload["parties"] = std::move(list);
        payload["max_abs_diff"] = worst;
        payload["ok"] = ok;
        out << envelope("oracle-check", {a.file}, std::move(payload)).dump(2) << '\n';
        return ok ? kOk : kPropertyViolated;
    }
    out << "network: " << network_summary(net) << '\n';
    out << "functional: " << f.name() << "  state: " << (state.is_pure() ? "pure" : "mixed") << '\n';
    Table t({"party", "fast", "oracle"});
    for (const auto &r : rows) t.add({net.parties[r.party], fixed(r.fast, 9), fixed(r.dense, 9)});
    t.print(out);
    out << "oracle check: " << (ok ? "ok" : "MISMATCH") << " (tolerance 1e-9)\n";
    return ok ? kOk : kPropertyViolated;
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Entanglement monogamy, capacity and topology analysis for quantum networks", "qnet"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "Emit a JSON report instead of text");

    AnalyzeArgs analyze;
    auto *c_analyze = app.add_subcommand("analyze", "Characteristic vector and monogamy report per party");
    c_analyze->add_option("file", analyze.file, "Network JSON file")->required();
    analyze.functional.attach(c_analyze);
    c_analyze->add_flag("--literal-w", analyze.literal_w, "Use the diagonal W reduction (zero entanglement)");
    c_analyze->add_flag("--oracle", analyze.oracle, "Cross-check marginal entropies with the dense oracle");
    c_analyze->add_flag("--json", as_json, "Emit a JSON report");

    FlowArgs flow;
    auto *c_maxflow = app.add_subcommand("maxflow", "Maximum flow between two parties");
    c_maxflow->add_option("file", flow.file, "Network JSON file")->required();
    c_maxflow->add_option("source", flow.source, "Source party")->required();
    c_maxflow->add_option("sink", flow.sink, "Sink party")->required();
    c_maxflow->add_flag("--trace", flow.trace, "Print augmenting paths and edge flows");
    c_maxflow->add_flag("--verify", flow.verify, "Enumerate the minimum cut and check equality");
    c_maxflow->add_flag("--json", as_json, "Emit a JSON report");

    FlowArgs cut;
    auto *c_mincut = app.add_subcommand("mincut", "Minimum source/sink cut by enumeration");
    c_mincut->add_option("file", cut.file, "Network JSON file")->required();
    c_mincut->add_option("source", cut.source, "Source party")->required();
    c_mincut->add_option("sink", cut.sink, "Sink party")->required();
    c_mincut->add_flag("--json", as_json, "Emit a JSON report");

    ClassifyArgs classify;
    auto *c_classify = app.add_subcommand("classify", "Compare networks by characteristic vectors");
    c_classify->add_option("files", classify.files, "Network JSON files")->required();
    c_classify->add_flag("--discriminators", classify.discriminators, "Evaluate outcome-based discriminators");
    c_classify->add_flag("--unlabeled", classify.unlabeled, "Compare sorted vectors instead of matching labels");
    c_classify->add_flag("--json", as_json, "Emit a JSON report");

    MutualInfoArgs mi;
    auto *c_mi = app.add_subcommand("mutualinfo", "Outcome-distribution entropies and dependence measures");
    c_mi->add_option("file", mi.file, "Network JSON file")->required();
    c_mi->add_option("--parties", mi.parties, "Parties to include (default: all)")->delimiter(',');
    c_mi->add_flag("--oracle", mi.oracle, "Cross-check the doubled entropy with the dense oracle");
    c_mi->add_flag("--json", as_json, "Emit a JSON report");

    OracleArgs oc;
    auto *c_oracle = app.add_subcommand("oracle-check", "Compare fast-path marginal entropies with the dense oracle");
    c_oracle->add_option("file", oc.file, "Network JSON file")->required();
    oc.functional.attach(c_oracle);
    c_oracle->add_flag("--literal-w", oc.literal_w, "Use the diagonal W reduction");
    c_oracle->add_flag("--json", as_json, "Emit a JSON report");

    std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }

    try {
        if (*c_analyze) return cmd_analyze(analyze, as_json, out);
        if (*c_maxflow) return cmd_maxflow(flow, as_json, out);
        if (*c_mincut) return cmd_mincut(cut, as_json, out);
        if (*c_classify) return cmd_classify(classify, as_json, out);
        if (*c_mi) return cmd_mutualinfo(mi, as_json, out);
        if (*c_oracle) return cmd_oracle_check(oc, as_json, out);
    } catch (const NetworkError &e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const InputError &e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::length_error &e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::out_of_range &e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
    return kInputError;
}

}  // namespace qnet::cli
