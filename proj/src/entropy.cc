#include "qnet/entropy.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qnet {

namespace {

constexpr double kNormTol = 1e-12;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool is_valid_order(double q) { return std::isfinite(q) && q > 0.0 && q != 1.0; }

}  // namespace

Spectrum::Spectrum(std::vector<double> probs) : probs_(std::move(probs)) {
    if (probs_.empty()) {
        throw std::invalid_argument("spectrum must be non-empty");
    }
    double total = 0.0;
    for (double &p : probs_) {
        if (!std::isfinite(p) || p < -kNormTol || p > 1.0 + kNormTol) {
            throw std::invalid_argument("spectrum entry out of range: " + std::to_string(p));
        }
        p = std::clamp(p, 0.0, 1.0);
        total += p;
    }
    if (std::abs(total - 1.0) > kNormTol * static_cast<double>(std::max<std::size_t>(probs_.size(), 1))) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "spectrum does not sum to 1 (sum = " << total << ")";
        throw std::invalid_argument(msg.str());
    }
}

bool Spectrum::is_point_mass(double tol) const {
    return std::any_of(probs_.begin(), probs_.end(), [tol](double p) { return p >= 1.0 - tol; });
}

EntropyFunctional::EntropyFunctional(Family family) : family_(family) {
    std::visit(overloaded{
                   [](const VonNeumann &) {},
                   [](const Renyi &r) {
                       if (!is_valid_order(r.alpha)) throw std::invalid_argument("Renyi order must satisfy alpha > 0, alpha != 1");
                   },
                   [](const Tsallis &t) {
                       if (!is_valid_order(t.q)) throw std::invalid_argument("Tsallis order must satisfy q > 0, q != 1");
                   },
                   [](const Unified &u) {
                       if (!is_valid_order(u.q)) throw std::invalid_argument("Unified order must satisfy q > 0, q != 1");
                       if (!std::isfinite(u.s) || u.s == 0.0) throw std::invalid_argument("Unified parameter s must be finite and non-zero");
                   },
               },
               family_);
}

Additivity EntropyFunctional::additivity() const {
    return std::visit(overloaded{
                          [](const VonNeumann &) { return Additivity::Additive; },
                          [](const Renyi &) { return Additivity::Additive; },
                          [](const Tsallis &t) { return t.q > 1.0 ? Additivity::Subadditive : Additivity::Superadditive; },
                          [](const Unified &u) {
                              // S(a x b) - S(a) - S(b) = (Pa^s - 1)(Pb^s - 1) / ((1 - q) s)
                              bool sub = (u.q < 1.0 && u.s < 0.0) || (u.q > 1.0 && u.s > 0.0);
                              return sub ? Additivity::Subadditive : Additivity::Superadditive;
                          },
                      },
                      family_);
}

double EntropyFunctional::order() const {
    return std::visit(overloaded{
                          [](const VonNeumann &) { return 1.0; },
                          [](const Renyi &r) { return r.alpha; },
                          [](const Tsallis &t) { return t.q; },
                          [](const Unified &u) { return u.q; },
                      },
                      family_);
}

double EntropyFunctional::from_power_sum(double p) const {
    return std::visit(overloaded{
                          [](const VonNeumann &) -> double {
                              throw std::logic_error("von Neumann entropy is not a function of a power sum");
                          },
                          [p](const Renyi &r) { return std::log2(p) / (1.0 - r.alpha); },
                          [p](const Tsallis &t) { return (1.0 - p) / (t.q - 1.0); },
                          [p](const Unified &u) {
                              if (u.s == 1.0) return (1.0 - p) / (u.q - 1.0);
                              return std::expm1(u.s * std::log(p)) / ((1.0 - u.q) * u.s);
                          },
                      },
                      family_);
}

std::string EntropyFunctional::name() const {
    std::ostringstream out;
    out.precision(12);
    std::visit(overloaded{
                   [&](const VonNeumann &) { out << "von-neumann"; },
                   [&](const Renyi &r) { out << "renyi(" << r.alpha << ")"; },
                   [&](const Tsallis &t) { out << "tsallis(" << t.q << ")"; },
                   [&](const Unified &u) { out << "unified(" << u.q << "," << u.s << ")"; },
               },
               family_);
    return out.str();
}

double power_sum(const Spectrum &spectrum, double exponent) {
    double sum = 0.0;
    for (double p : spectrum.probs()) {
        if (p > 0.0) sum += std::pow(p, exponent);
    }
    return sum;
}

double entropy(const Spectrum &spectrum, const EntropyFunctional &f) {
    double value;
    if (f.is_von_neumann()) {
        value = 0.0;
        for (double p : spectrum.probs()) {
            if (p > 0.0) value -= p * std::log2(p);
        }
    } else {
        value = f.from_power_sum(power_sum(spectrum, f.order()));
    }
    // Rounding can leave -1e-17 on point masses.
    return std::max(value, 0.0);
}

double binary_entropy(double x) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw std::invalid_argument("binary_entropy argument outside [0, 1]");
    }
    if (x == 0.0 || x == 1.0) return 0.0;
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

Spectrum product_spectrum(const Spectrum &a, const Spectrum &b) {
    std::vector<double> out;
    out.reserve(a.size() * b.size());
    for (double pa : a.probs()) {
        for (double pb : b.probs()) out.push_back(pa * pb);
    }
    return Spectrum(std::move(out));
}

double product_entropy(std::span<const Spectrum> factors, std::span<const int> multiplicities,
                       const EntropyFunctional &f) {
    if (factors.size() != multiplicities.size()) {
        throw std::invalid_argument("product_entropy: factor/multiplicity size mismatch");
    }
    if (f.additive()) {
        double total = 0.0;
        for (std::size_t i = 0; i < factors.size(); ++i) total += multiplicities[i] * entropy(factors[i], f);
        return total;
    }
    // Tr((a x b)^q) = Tr(a^q) Tr(b^q); accumulate in log space.
    double log_power = 0.0;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        log_power += multiplicities[i] * std::log(power_sum(factors[i], f.order()));
    }
    return std::max(f.from_power_sum(std::exp(log_power)), 0.0);
}

Spectrum link_marginal_spectrum(const Link &link, PartyIndex party) {
    if (std::find(link.endpoints.begin(), link.endpoints.end(), party) == link.endpoints.end()) {
        throw std::invalid_argument("party " + std::to_string(party) + " is not an endpoint of the link");
    }
    const double c = std::cos(link.angle);
    const double s = std::sin(link.angle);
    switch (link.kind) {
        case LinkKind::GenEpr:
        case LinkKind::GenGhz:
        case LinkKind::ReducedGhz:
            return Spectrum({c * c, s * s});
        case LinkKind::WState:
            return Spectrum({2.0 / 3.0, 1.0 / 3.0});
        case LinkKind::ReducedW:
            return Spectrum({1.0 / 3.0, 2.0 / 3.0});
        case LinkKind::Schmidt:
            return Spectrum(link.coeffs);
    }
    throw std::logic_error("unhandled link kind");
}

}  // namespace qnet
