#pragma once

#include <random>

namespace qnet::oracle {

template <class Rng>
Eigen::MatrixXcd random_unitary(std::size_t dim, Rng &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    const auto d = static_cast<Eigen::Index>(dim);
    Eigen::MatrixXcd z(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) z(i, j) = {normal(rng), normal(rng)};
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < d; ++j) {
        const auto diag = r(j, j);
        if (std::abs(diag) > 0.0) q.col(j) *= diag / std::abs(diag);
    }
    return q;
}

}  // namespace qnet::oracle
