#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qnet/network.h"

namespace qnet {

/// Eigenvalues of a reduced density operator. Entries within 1e-12 below zero
/// are clamped; the vector must sum to one within 1e-12.
class Spectrum {
  public:
    Spectrum() : probs_{1.0} {}
    explicit Spectrum(std::vector<double> probs);

    std::span<const double> probs() const { return probs_; }
    std::size_t size() const { return probs_.size(); }
    double operator[](std::size_t i) const { return probs_[i]; }
    bool is_point_mass(double tol = 1e-12) const;

  private:
    std::vector<double> probs_;
};

struct VonNeumann {};
struct Renyi {
    double alpha;
};
struct Tsallis {
    double q;
};
struct Unified {
    double q;
    double s;
};

/// How the functional behaves on tensor products: S(a x b) vs S(a) + S(b).
enum class Additivity { Additive, Subadditive, Superadditive };

class EntropyFunctional {
  public:
    using Family = std::variant<VonNeumann, Renyi, Tsallis, Unified>;

    EntropyFunctional() = default;
    /// Throws std::invalid_argument when parameters fall outside the family's domain.
    EntropyFunctional(Family family);

    static EntropyFunctional von_neumann() { return {VonNeumann{}}; }
    static EntropyFunctional renyi(double alpha) { return {Renyi{alpha}}; }
    static EntropyFunctional tsallis(double q) { return {Tsallis{q}}; }
    static EntropyFunctional unified(double q, double s) { return {Unified{q, s}}; }

    const Family &family() const { return family_; }
    bool is_von_neumann() const { return std::holds_alternative<VonNeumann>(family_); }
    Additivity additivity() const;
    bool additive() const { return additivity() == Additivity::Additive; }

    /// The exponent q (or alpha) entering Tr(rho^q); 1 for von Neumann.
    double order() const;
    /// Evaluates the functional from a power sum P = Tr(rho^order()).
    /// Not meaningful for von Neumann.
    double from_power_sum(double power_sum) const;

    std::string name() const;

  private:
    Family family_ = VonNeumann{};
};

double entropy(const Spectrum &spectrum, const EntropyFunctional &f);
double power_sum(const Spectrum &spectrum, double exponent);
double binary_entropy(double x);
Spectrum product_spectrum(const Spectrum &a, const Spectrum &b);

/// Exact entropy of the tensor product of `factors`, each repeated
/// `multiplicities[i]` times, without materializing the product.
/// Additive functionals sum; the others multiply power sums.
double product_entropy(std::span<const Spectrum> factors, std::span<const int> multiplicities,
                       const EntropyFunctional &f);

/// Spectrum of one instance of `link` as seen by `party`.
/// Throws std::invalid_argument when `party` is not an endpoint.
Spectrum link_marginal_spectrum(const Link &link, PartyIndex party);

}  // namespace qnet
