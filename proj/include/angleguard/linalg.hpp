#pragma once

// Dense Hermitian linear algebra over std::complex<Real>: a cyclic Jacobi
// eigensolver, positive square roots, positivity and Loewner-order predicates.
// Everything here is header-only and templated on the real scalar type; the
// rest of the library uses the double instantiation through the aliases at the
// bottom of the file.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <vector>

#include "angleguard/error.hpp"

namespace angleguard {

template <typename Real>
using ComplexMatrixT = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using RealVectorT = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

/// Tolerances shared by every numerical predicate in the library.
///
/// `psd_slack` is the negative eigenvalue mass, relative to the Frobenius norm
/// of the matrix under test, that is still accepted as positive.
struct ToleranceConfig {
    double abs_tol = 1e-9;
    double rel_tol = 1e-9;
    double psd_slack = 1e-9;

    void validate() const {
        if (!(abs_tol >= 0.0) || !(rel_tol >= 0.0) || !(psd_slack >= 0.0)) {
            fail(ErrorKind::input, "tolerances must be nonnegative");
        }
    }
};

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            const auto v = m(i, j);
            if constexpr (Eigen::NumTraits<typename Derived::Scalar>::IsComplex) {
                if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
            } else {
                if (!std::isfinite(v)) return false;
            }
        }
    }
    return true;
}

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& m, const char* what) {
    if (m.size() == 0) fail(ErrorKind::input, std::string(what) + " is empty");
    if (!all_finite(m)) fail(ErrorKind::input, std::string(what) + " has non-finite entries");
}

/// A square complex matrix that is Hermitian up to `herm_tol`.
///
/// Construction symmetrizes the input via (A + A*)/2, so the stored matrix is
/// exactly Hermitian. The tolerance is relative to max(1, max |a_ij|).
template <typename Real>
class HermitianMatrix {
public:
    using Matrix = ComplexMatrixT<Real>;

    explicit HermitianMatrix(const Matrix& a, Real herm_tol = Real(1e-9)) {
        if (a.rows() != a.cols()) fail(ErrorKind::input, "Hermitian matrix must be square");
        require_finite(a, "Hermitian matrix");
        const Real scale = std::max<Real>(Real(1), a.cwiseAbs().maxCoeff());
        const Real skew = (a - a.adjoint()).cwiseAbs().maxCoeff();
        if (skew > herm_tol * scale) fail(ErrorKind::input, "matrix is not Hermitian within tolerance");
        matrix_ = (a + a.adjoint()) / Real(2);
        for (Eigen::Index i = 0; i < matrix_.rows(); ++i) matrix_(i, i).imag(Real(0));
    }

    static HermitianMatrix identity(Eigen::Index n) { return HermitianMatrix(Matrix::Identity(n, n)); }

    static HermitianMatrix diagonal(const RealVectorT<Real>& d) {
        return HermitianMatrix(d.template cast<std::complex<Real>>().asDiagonal().toDenseMatrix());
    }

    Eigen::Index dim() const { return matrix_.rows(); }
    const Matrix& matrix() const { return matrix_; }
    Real frobenius_norm() const { return matrix_.norm(); }

    friend HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
        require_same_dim(a, b);
        return HermitianMatrix(a.matrix_ + b.matrix_);
    }
    friend HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
        require_same_dim(a, b);
        return HermitianMatrix(a.matrix_ - b.matrix_);
    }
    friend HermitianMatrix operator*(Real s, const HermitianMatrix& a) { return HermitianMatrix(s * a.matrix_); }

private:
    static void require_same_dim(const HermitianMatrix& a, const HermitianMatrix& b) {
        if (a.dim() != b.dim()) fail(ErrorKind::input, "Hermitian matrices differ in dimension");
    }

    Matrix matrix_;
};

/// Eigenvalues in descending order and a unitary basis whose columns are the
/// matching eigenvectors.
template <typename Real>
struct EigenDecomposition {
    RealVectorT<Real> eigenvalues;
    ComplexMatrixT<Real> basis;

    ComplexMatrixT<Real> reconstruct() const {
        return basis * eigenvalues.template cast<std::complex<Real>>().asDiagonal() * basis.adjoint();
    }
};

/// Cyclic complex Jacobi. Each rotation first removes the phase of the pivot
/// a_pq with diag(1, e^{-i phi}) and then applies the real symmetric Jacobi
/// rotation, so the pivot pair is annihilated exactly.
template <typename Real>
EigenDecomposition<Real> herm_eigendecomp(const HermitianMatrix<Real>& h, int max_sweeps = 100) {
    using Complex = std::complex<Real>;
    using Matrix = ComplexMatrixT<Real>;

    Matrix a = h.matrix();
    require_finite(a, "Hermitian matrix");
    const Eigen::Index n = a.rows();
    Matrix v = Matrix::Identity(n, n);

    const Real eps = std::numeric_limits<Real>::epsilon();
    const Real scale = a.norm();
    const Real pivot_floor = eps * scale / Real(n * n);

    auto off_norm = [&] {
        Real s = 0;
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index i = 0; i < n; ++i)
                if (i != j) s += std::norm(a(i, j));
        return std::sqrt(s);
    };

    for (int sweep = 0; sweep < max_sweeps && scale > 0; ++sweep) {
        if (off_norm() <= eps * scale) break;
        for (Eigen::Index p = 0; p + 1 < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const Complex b = a(p, q);
                const Real mag = std::abs(b);
                if (mag <= pivot_floor) continue;

                const Complex phase = b / mag;
                const Complex conj_phase = std::conj(phase);
                const Real theta = (a(q, q).real() - a(p, p).real()) / (Real(2) * mag);
                const Real t = (theta >= 0 ? Real(1) : Real(-1)) / (std::abs(theta) + std::sqrt(theta * theta + Real(1)));
                const Real c = Real(1) / std::sqrt(t * t + Real(1));
                const Real s = t * c;

                // A <- A J with J = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] on (p, q).
                for (Eigen::Index k = 0; k < n; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = c * akp - s * conj_phase * akq;
                    a(k, q) = s * akp + c * conj_phase * akq;
                    const Complex vkp = v(k, p);
                    const Complex vkq = v(k, q);
                    v(k, p) = c * vkp - s * conj_phase * vkq;
                    v(k, q) = s * vkp + c * conj_phase * vkq;
                }
                // A <- J* A
                for (Eigen::Index k = 0; k < n; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = c * apk - s * phase * aqk;
                    a(q, k) = s * apk + c * phase * aqk;
                }
                a(p, q) = Complex(0);
                a(q, p) = Complex(0);
                a(p, p).imag(Real(0));
                a(q, q).imag(Real(0));
            }
        }
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index(0));
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index i, Eigen::Index j) { return a(i, i).real() > a(j, j).real(); });

    EigenDecomposition<Real> out;
    out.eigenvalues.resize(n);
    out.basis.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const Eigen::Index src = order[static_cast<std::size_t>(k)];
        out.eigenvalues(k) = a(src, src).real();
        out.basis.col(k) = v.col(src);
    }
    return out;
}

template <typename Real>
Real min_eigenvalue(const HermitianMatrix<Real>& h) {
    const auto ed = herm_eigendecomp(h);
    return ed.eigenvalues(ed.eigenvalues.size() - 1);
}

template <typename Real>
Real max_eigenvalue(const HermitianMatrix<Real>& h) {
    return herm_eigendecomp(h).eigenvalues(0);
}

/// Positive square root. Eigenvalues in [-psd_slack*||H||_F, 0) are clamped
/// to zero; so are positive eigenvalues below the rounding floor
/// 4 n eps ||H||_F, which cannot be told apart from an exact zero.
template <typename Real>
HermitianMatrix<Real> psd_sqrt(const HermitianMatrix<Real>& h, const ToleranceConfig& tol = {}) {
    tol.validate();
    const Real norm = h.frobenius_norm();
    const auto ed = herm_eigendecomp(h);
    const Real lowest = ed.eigenvalues(ed.eigenvalues.size() - 1);
    if (lowest < -Real(tol.psd_slack) * norm) {
        fail(ErrorKind::not_positive, "eigenvalue below -psd_slack*||H||");
    }
    const Real rounding_floor = Real(4) * Real(h.dim()) * std::numeric_limits<Real>::epsilon() * norm;
    const RealVectorT<Real> roots =
        ed.eigenvalues.unaryExpr([&](Real l) { return l <= rounding_floor ? Real(0) : std::sqrt(l); });
    return HermitianMatrix<Real>(ed.basis * roots.template cast<std::complex<Real>>().asDiagonal() *
                                 ed.basis.adjoint());
}

template <typename Real>
bool is_positive(const HermitianMatrix<Real>& h, const ToleranceConfig& tol = {}) {
    return min_eigenvalue(h) >= -Real(tol.psd_slack) * std::max(Real(1), h.frobenius_norm());
}

/// A <= B in the Loewner order, i.e. B - A is positive.
template <typename Real>
bool loewner_leq(const HermitianMatrix<Real>& a, const HermitianMatrix<Real>& b, const ToleranceConfig& tol = {}) {
    if (a.dim() != b.dim()) fail(ErrorKind::input, "loewner_leq: dimension mismatch");
    return is_positive(b - a, tol);
}

/// Smallest eigenvalue of B - A; negative values measure how badly A <= B fails.
template <typename Real>
Real loewner_gap(const HermitianMatrix<Real>& a, const HermitianMatrix<Real>& b) {
    if (a.dim() != b.dim()) fail(ErrorKind::input, "loewner_gap: dimension mismatch");
    return min_eigenvalue(b - a);
}

/// Singular values of an arbitrary complex matrix, descending, from the
/// eigenvalues of A*A.
template <typename Real>
RealVectorT<Real> singular_values(const ComplexMatrixT<Real>& a) {
    require_finite(a, "matrix");
    const auto ed = herm_eigendecomp(HermitianMatrix<Real>(a.adjoint() * a));
    return ed.eigenvalues.unaryExpr([](Real l) { return std::sqrt(std::max(Real(0), l)); });
}

template <typename Real>
Real spectral_norm(const ComplexMatrixT<Real>& a) {
    return singular_values(a)(0);
}

using ComplexMatrix = ComplexMatrixT<double>;
using Hermitian = HermitianMatrix<double>;
using EigenDecompositionD = EigenDecomposition<double>;

} // namespace angleguard
