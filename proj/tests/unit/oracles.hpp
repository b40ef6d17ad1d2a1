#pragma once

// Independent reference computations used as test oracles. Everything here
// goes through Eigen's own solvers, never through the library's Jacobi code.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>

#include "angleguard/linalg.hpp"
#include "angleguard/random.hpp"

namespace oracle {

using angleguard::ComplexMatrix;

inline Eigen::VectorXd eigenvalues_desc(const ComplexMatrix& h) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
    Eigen::VectorXd v = es.eigenvalues();
    std::sort(v.data(), v.data() + v.size(), std::greater<>());
    return v;
}

inline double min_eig(const ComplexMatrix& h) { return eigenvalues_desc(h).minCoeff(); }

inline ComplexMatrix sqrt_psd(const ComplexMatrix& h) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
    const Eigen::VectorXd roots = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * roots.cast<std::complex<double>>().asDiagonal() * es.eigenvectors().adjoint();
}

inline double op_norm(const ComplexMatrix& a) {
    Eigen::JacobiSVD<ComplexMatrix> svd(a);
    return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

inline Eigen::VectorXd singular_values(const Eigen::MatrixXd& a) { return Eigen::JacobiSVD<Eigen::MatrixXd>(a).singularValues(); }

inline ComplexMatrix random_hermitian(angleguard::Rng& rng, Eigen::Index n) {
    const ComplexMatrix g = rng.complex_normal_matrix(n, n);
    return (g + g.adjoint()) / 2.0;
}

inline ComplexMatrix random_psd(angleguard::Rng& rng, Eigen::Index n, Eigen::Index rank) {
    const ComplexMatrix g = rng.complex_normal_matrix(rank, n);
    return g.adjoint() * g;
}

/// Plain arccos of the clamped cosine; the library uses a different formula.
inline double angle(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    return std::acos(std::clamp(x.dot(y) / (x.norm() * y.norm()), -1.0, 1.0));
}

} // namespace oracle
