#include "angleguard/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "angleguard/error.hpp"

namespace angleguard::gen {

namespace {

/// Q from QR with the phases of diag(R) folded in, which makes Q Haar
/// distributed for a Gaussian input.
template <typename Matrix>
Matrix orthonormal_columns(const Matrix& g) {
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * Matrix::Identity(g.rows(), g.cols());
    const Matrix& r = qr.matrixQR();
    for (Eigen::Index k = 0; k < g.cols(); ++k) {
        const auto d = r(k, k);
        if (std::abs(d) > 0.0) q.col(k) *= d / std::abs(d);
    }
    return q;
}

std::vector<Eigen::Index> random_permutation(Rng& rng, Eigen::Index n) {
    std::vector<Eigen::Index> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), Eigen::Index(0));
    for (Eigen::Index i = n - 1; i > 0; --i) {
        const auto j = static_cast<Eigen::Index>(rng.uniform_int(0, static_cast<int>(i)));
        std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
    }
    return perm;
}

std::complex<double> random_phase(Rng& rng) { return std::polar(1.0, rng.uniform(0.0, 2.0 * std::numbers::pi)); }

} // namespace

RealVector unit_vector(Rng& rng, Eigen::Index n) {
    if (n < 1) fail(ErrorKind::input, "dimension must be >= 1");
    RealVector v = rng.normal_vector(n);
    while (v.norm() == 0.0) v = rng.normal_vector(n);
    return v / v.norm();
}

RealWitness orthogonal_pair(Rng& rng, Eigen::Index n) {
    if (n < 2) fail(ErrorKind::precondition, "orthogonal pairs need dimension >= 2");
    const RealVector x = unit_vector(rng, n) * rng.uniform(0.5, 2.0);
    RealVector y = rng.normal_vector(n);
    y -= (y.dot(x) / x.dot(x)) * x;
    while (y.norm() == 0.0) {
        y = rng.normal_vector(n);
        y -= (y.dot(x) / x.dot(x)) * x;
    }
    y *= rng.uniform(0.5, 2.0) / y.norm();
    return {x, y};
}

RealWitness equal_norm_pair(Rng& rng, Eigen::Index n) {
    const RealVector x = unit_vector(rng, n) * rng.uniform(0.5, 2.0);
    return {x, unit_vector(rng, n) * x.norm()};
}

RealWitness angle_theta_pair(Rng& rng, Eigen::Index n, double theta, bool equal_norm) {
    if (n < 2) fail(ErrorKind::precondition, "angle pairs need dimension >= 2");
    const RealVector u = unit_vector(rng, n);
    RealVector v = rng.normal_vector(n);
    v -= v.dot(u) * u;
    while (v.norm() == 0.0) {
        v = rng.normal_vector(n);
        v -= v.dot(u) * u;
    }
    v.normalize();
    const double r = rng.uniform(0.5, 2.0);
    const double s = equal_norm ? r : rng.uniform(0.5, 2.0);
    return {r * u, s * (std::cos(theta) * u + std::sin(theta) * v)};
}

RealLinearMap similarity_map(Rng& rng, Eigen::Index in_dim, Eigen::Index out_dim, double gamma) {
    if (in_dim < 1 || out_dim < in_dim) fail(ErrorKind::input, "similarity needs 1 <= in_dim <= out_dim");
    if (!(gamma > 0.0)) fail(ErrorKind::input, "gamma must be positive");
    return gamma * orthonormal_columns(Eigen::MatrixXd(rng.normal_matrix(out_dim, in_dim)));
}

RealLinearMap spread_map(Rng& rng, Eigen::Index in_dim, Eigen::Index out_dim, double min_spread) {
    if (in_dim < 1 || out_dim < 1) fail(ErrorKind::input, "dimensions must be >= 1");
    const Eigen::Index r = std::min(in_dim, out_dim);
    Eigen::VectorXd sigma(r);
    for (Eigen::Index k = 0; k < r; ++k) sigma(k) = rng.uniform(0.5, 3.0);
    if (r == 1 || sigma.maxCoeff() - sigma.minCoeff() < min_spread) {
        Eigen::Index lo = 0;
        sigma.minCoeff(&lo);
        const Eigen::Index hi = (lo + 1) % r;
        sigma(hi) = sigma(lo) + min_spread + rng.uniform(0.0, 1.0);
    }
    const Eigen::MatrixXd u = orthonormal_columns(Eigen::MatrixXd(rng.normal_matrix(out_dim, r)));
    const Eigen::MatrixXd v = orthonormal_columns(Eigen::MatrixXd(rng.normal_matrix(in_dim, r)));
    return u * sigma.asDiagonal() * v.transpose();
}

RealLinearMap random_linear_map(Rng& rng, Eigen::Index in_dim, Eigen::Index out_dim) {
    if (in_dim < 1 || out_dim < 1) fail(ErrorKind::input, "dimensions must be >= 1");
    return rng.normal_matrix(out_dim, in_dim);
}

Eigen::MatrixXd random_spd(Rng& rng, Eigen::Index n) {
    const Eigen::MatrixXd a = rng.normal_matrix(n, n);
    Eigen::MatrixXd g = a.transpose() * a / static_cast<double>(n) + 0.2 * Eigen::MatrixXd::Identity(n, n);
    return (g + g.transpose()) / 2.0;
}

ComplexMatrix random_unitary(Rng& rng, Eigen::Index n) { return random_isometry(rng, n, n); }

ComplexMatrix random_isometry(Rng& rng, Eigen::Index p, Eigen::Index m) {
    if (m < 1 || p < m) fail(ErrorKind::input, "isometry needs 1 <= m <= p");
    return orthonormal_columns(ComplexMatrix(rng.complex_normal_matrix(p, m)));
}

ComplexMatrix random_contraction(Rng& rng, Eigen::Index n) {
    const ComplexMatrix v = rng.complex_normal_matrix(n, n);
    return v / spectral_norm<double>(v);
}

ComplexMatrix random_projection(Rng& rng, Eigen::Index n, Eigen::Index rank) {
    if (rank < 0 || rank > n) fail(ErrorKind::input, "projection rank out of range");
    if (rank == 0) return ComplexMatrix::Zero(n, n);
    const ComplexMatrix q = random_isometry(rng, n, rank);
    return q * q.adjoint();
}

Hermitian random_psd(Rng& rng, Eigen::Index n) {
    const ComplexMatrix m = rng.complex_normal_matrix(n, n);
    return Hermitian(m.adjoint() * m);
}

ModuleElement random_element(Rng& rng, const ModuleShape& shape) {
    shape.validate();
    if (shape.algebra.kind == AlgebraKind::diagonal) {
        const Eigen::VectorXcd d = rng.complex_normal_matrix(shape.n(), 1);
        return ModuleElement(shape, d.asDiagonal().toDenseMatrix());
    }
    return ModuleElement(shape, rng.complex_normal_matrix(shape.m, shape.n()));
}

ComplexMatrix random_algebra_element(Rng& rng, const AlgebraSpec& algebra) {
    if (algebra.kind == AlgebraKind::diagonal) {
        const Eigen::VectorXcd d = rng.complex_normal_matrix(algebra.n, 1);
        return d.asDiagonal().toDenseMatrix();
    }
    return rng.complex_normal_matrix(algebra.n, algebra.n);
}

ModulePair orthogonal_module_pair(Rng& rng, const ModuleShape& shape) {
    shape.validate();
    // Rows (or diagonal positions) are split into two disjoint random sets.
    const Eigen::Index slots = shape.m;
    const auto perm = random_permutation(rng, slots);
    const Eigen::Index first = slots >= 2 ? rng.uniform_int(1, static_cast<int>(slots - 1)) : (rng.coin() ? 1 : 0);
    ComplexMatrix x = ComplexMatrix::Zero(shape.m, shape.n());
    ComplexMatrix y = ComplexMatrix::Zero(shape.m, shape.n());
    for (Eigen::Index k = 0; k < slots; ++k) {
        const Eigen::Index row = perm[static_cast<std::size_t>(k)];
        ComplexMatrix& target = k < first ? x : y;
        if (shape.algebra.kind == AlgebraKind::diagonal) {
            target(row, row) = rng.complex_normal();
        } else {
            target.row(row) = rng.complex_normal_matrix(1, shape.n());
        }
    }
    return {ModuleElement(shape, std::move(x)), ModuleElement(shape, std::move(y))};
}

ModulePair equal_modulus_pair(Rng& rng, const ModuleShape& shape) {
    ModuleElement x = random_element(rng, shape);
    if (shape.algebra.kind == AlgebraKind::diagonal) {
        Eigen::VectorXcd phases(shape.n());
        for (Eigen::Index k = 0; k < shape.n(); ++k) phases(k) = random_phase(rng);
        ModuleElement y(shape, phases.asDiagonal() * x.matrix());
        return {std::move(x), std::move(y)};
    }
    ModuleElement y(shape, random_unitary(rng, shape.m) * x.matrix());
    return {std::move(x), std::move(y)};
}

ModulePair ordered_module_pair(Rng& rng, const ModuleShape& shape) {
    ModuleElement y = random_element(rng, shape);
    if (shape.algebra.kind == AlgebraKind::diagonal) {
        Eigen::VectorXcd c(shape.n());
        for (Eigen::Index k = 0; k < shape.n(); ++k) c(k) = rng.uniform() * random_phase(rng);
        ModuleElement x(shape, c.asDiagonal() * y.matrix());
        return {std::move(x), std::move(y)};
    }
    ModuleElement x(shape, random_contraction(rng, shape.m) * y.matrix());
    return {std::move(x), std::move(y)};
}

GeneratedMap op_a_linear_map(Rng& rng, const ModuleShape& shape, Eigen::Index p) {
    shape.validate();
    const double gamma = rng.uniform(0.5, 4.0);
    if (shape.algebra.kind == AlgebraKind::diagonal) {
        Eigen::VectorXcd d(shape.n());
        for (Eigen::Index k = 0; k < shape.n(); ++k) d(k) = std::sqrt(gamma) * random_phase(rng);
        return {MapUnderTest::left_mult(shape, d.asDiagonal().toDenseMatrix()), gamma};
    }
    if (p < shape.m) fail(ErrorKind::input, "an isometric left factor needs p >= m");
    return {MapUnderTest::left_mult(shape, std::sqrt(gamma) * random_isometry(rng, p, shape.m)), gamma};
}

MapUnderTest generic_left_mult(Rng& rng, const ModuleShape& shape, Eigen::Index p) {
    shape.validate();
    if (shape.algebra.kind == AlgebraKind::diagonal) {
        const Eigen::VectorXcd d = rng.complex_normal_matrix(shape.n(), 1);
        return MapUnderTest::left_mult(shape, d.asDiagonal().toDenseMatrix());
    }
    return MapUnderTest::left_mult(shape, rng.complex_normal_matrix(p, shape.m));
}

MapUnderTest random_general_linear(Rng& rng, const ModuleShape& shape, Eigen::Index p) {
    shape.validate();
    return MapUnderTest::general_linear(shape, p, rng.complex_normal_matrix(p * shape.n(), shape.m * shape.n()));
}

MapUnderTest left_mult_as_general_linear(const ModuleShape& shape, const ComplexMatrix& s) {
    shape.validate();
    const Eigen::Index n = shape.n();
    const Eigen::Index p = s.rows();
    if (s.cols() != shape.m) fail(ErrorKind::input, "left factor must have m columns");
    ComplexMatrix kron = ComplexMatrix::Zero(p * n, shape.m * n);
    for (Eigen::Index j = 0; j < n; ++j) kron.block(j * p, j * shape.m, p, shape.m) = s;
    return MapUnderTest::general_linear(shape, p, std::move(kron));
}

} // namespace angleguard::gen
