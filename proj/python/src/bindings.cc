#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "qnet/classify.h"
#include "qnet/flow.h"
#include "qnet/monogamy.h"
#include "qnet/oracle.h"

namespace py = pybind11;
using namespace qnet;

namespace {

EntropyFunctional make_functional(const std::string &family, const std::vector<double> &params) {
    auto need = [&](std::size_t n) {
        if (params.size() != n) throw std::invalid_argument(family + " takes " + std::to_string(n) + " parameter(s)");
    };
    if (family == "von-neumann") {
        need(0);
        return EntropyFunctional::von_neumann();
    }
    if (family == "renyi") {
        need(1);
        return EntropyFunctional::renyi(params[0]);
    }
    if (family == "tsallis") {
        need(1);
        return EntropyFunctional::tsallis(params[0]);
    }
    if (family == "unified") {
        need(2);
        return EntropyFunctional::unified(params[0], params[1]);
    }
    throw std::invalid_argument("unknown entropy family '" + family + "'");
}

PartyIndex party(const Network &net, const std::string &label) { return net.party_index(label); }

std::vector<PartyIndex> parties_of(const Network &net, const std::optional<std::vector<std::string>> &labels) {
    std::vector<PartyIndex> out;
    if (!labels) {
        for (PartyIndex p = 0; p < net.party_count(); ++p) out.push_back(p);
        return out;
    }
    for (const auto &l : *labels) out.push_back(party(net, l));
    return out;
}

py::dict report_dict(const Network &net, const MonogamyReport &r) {
    py::dict d;
    d["party"] = net.parties[r.party];
    d["lhs"] = r.lhs;
    d["rhs"] = r.rhs;
    d["slack"] = r.slack;
    d["equality_predicted"] = r.equality_predicted;
    d["holds"] = r.holds;
    d["lhs_bound"] = std::string(to_string(r.lhs_bound));
    d["rhs_bound"] = std::string(to_string(r.rhs_bound));
    d["outside_w_hypothesis"] = r.outside_w_hypothesis();
    if (r.exact_lhs) {
        d["exact_lhs"] = *r.exact_lhs;
        d["exact_rhs"] = *r.exact_rhs;
    }
    return d;
}

std::vector<std::string> labels_of(const Hypergraph &h, const std::vector<PartyIndex> &vs) {
    std::vector<std::string> out;
    for (PartyIndex v : vs) out.push_back(h.labels[v]);
    return out;
}

}  // namespace

PYBIND11_MODULE(_qnet, m) {
    m.doc() = "Entanglement distribution, monogamy and capacity of quantum networks";

    py::register_exception<NetworkError>(m, "NetworkError", PyExc_ValueError);

    py::class_<Network>(m, "Network")
        .def_static("load", [](const std::filesystem::path &p) { return load_network(p); }, py::arg("path"))
        .def_static("parse", [](const std::string &text) { return parse_network(text); }, py::arg("text"))
        .def("to_json", &serialize_network)
        .def_readonly("name", &Network::name)
        .def_readonly("parties", &Network::parties)
        .def_property_readonly("link_count", [](const Network &n) { return n.links.size(); })
        .def_property_readonly("qubit_count", &Network::qubit_count)
        .def("__repr__", [](const Network &n) {
            return "<Network '" + n.name + "' with " + std::to_string(n.party_count()) + " parties>";
        });

    m.def("entropy",
          [](const std::vector<double> &probs, const std::string &family, const std::vector<double> &params) {
              return entropy(Spectrum(probs), make_functional(family, params));
          },
          py::arg("probs"), py::arg("family") = "von-neumann", py::arg("params") = std::vector<double>{});

    m.def("characteristic_vector", [](const Network &n) { return characteristic_vector(n).entries; });

    m.def("marginal_entanglement",
          [](const Network &n, const std::string &p, const std::string &family, const std::vector<double> &params) {
              const CutValue v = marginal_entanglement(n, party(n, p), make_functional(family, params));
              return py::make_tuple(v.value, std::string(to_string(v.bound)));
          },
          py::arg("network"), py::arg("party"), py::arg("family") = "von-neumann", py::arg("params") = std::vector<double>{});

    m.def("monogamy",
          [](const Network &n, const std::string &family, const std::vector<double> &params, bool literal_w) {
              MeasureOptions opts;
              opts.literal_reduced_w = literal_w;
              py::list out;
              for (const auto &r : monogamy_sweep(n, make_functional(family, params), opts)) out.append(report_dict(n, r));
              return out;
          },
          py::arg("network"), py::arg("family") = "von-neumann", py::arg("params") = std::vector<double>{},
          py::arg("literal_w") = false);

    m.def("max_flow",
          [](const Network &n, const std::string &s, const std::string &t) {
              return max_flow(associated_hypergraph(n), party(n, s), party(n, t)).value;
          },
          py::arg("network"), py::arg("source"), py::arg("sink"));

    m.def("min_cut",
          [](const Network &n, const std::string &s, const std::string &t) {
              const Hypergraph h = associated_hypergraph(n);
              const CutResult c = min_cut_enumerate(h, party(n, s), party(n, t));
              py::dict d;
              d["capacity"] = c.capacity;
              d["side_s"] = labels_of(h, c.side_s);
              d["side_t"] = labels_of(h, c.side_t);
              return d;
          },
          py::arg("network"), py::arg("source"), py::arg("sink"));

    m.def("lu_equivalent",
          [](const Network &a, const Network &b, bool unlabeled) {
              const auto d = lu_equivalent(a, b, unlabeled ? Alignment::Unlabeled : Alignment::ByLabel);
              return std::string(to_string(d.decision));
          },
          py::arg("a"), py::arg("b"), py::arg("unlabeled") = false);

    m.def("dual_total_correlation",
          [](const Network &n, const std::optional<std::vector<std::string>> &parties) {
              return dual_total_correlation(outcome_distribution(n), parties_of(n, parties));
          },
          py::arg("network"), py::arg("parties") = py::none());

    m.def("doubled_entropy",
          [](const Network &n, const std::optional<std::vector<std::string>> &parties) {
              return doubled_entropy(n, parties_of(n, parties));
          },
          py::arg("network"), py::arg("parties") = py::none());

    m.def("oracle_marginal_entropy",
          [](const Network &n, const std::string &p, const std::string &family, const std::vector<double> &params) {
              const auto state = oracle::build_global_state(n);
              const std::vector<PartyIndex> one{party(n, p)};
              return entropy(oracle::spectrum_of(oracle::reduced_density(state, one)), make_functional(family, params));
          },
          py::arg("network"), py::arg("party"), py::arg("family") = "von-neumann", py::arg("params") = std::vector<double>{});
}
