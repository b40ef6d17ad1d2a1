#pragma once

// Module-valued inner product, modulus, the four equivalent orthogonality
// conditions, the order conditions around |x| <= |x + lambda y|, and the
// locality and module-linearity predicates for maps.

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "angleguard/linalg.hpp"
#include "angleguard/module.hpp"

namespace angleguard {

/// <x, y> = x* y, an element of the algebra.
ComplexMatrix mod_inner(const ModuleElement& x, const ModuleElement& y);
/// |x| = (x* x)^{1/2}.
Hermitian mod_abs(const ModuleElement& x, const ToleranceConfig& tol = {});
/// |x|^2 = x* x, exact up to rounding and cheaper than squaring mod_abs.
Hermitian mod_abs_sq(const ModuleElement& x);
/// ||x|| = ||<x, x>||^{1/2}, the largest singular value of the matrix.
double mod_norm(const ModuleElement& x);

/// |x| = |y|, decided on the squares: the positive root is unique, so
/// |x|^2 = |y|^2 is equivalent and avoids amplifying rounding by the root.
bool moduli_equal(const ModuleElement& x, const ModuleElement& y, const ToleranceConfig& tol = {});
/// |x| <= |y| in the Loewner order.
bool modulus_leq(const ModuleElement& x, const ModuleElement& y, const ToleranceConfig& tol = {});

struct OrthogonalityWitness {
    std::optional<ComplexMatrix> a{};
    std::optional<ComplexMatrix> b{};
    std::optional<std::complex<double>> lambda{};
    double residual = 0.0;
};

/// (i) <x,y> = 0; (ii) <xb, ya> = 0 for all a, b; (iii) |x+ya| = |x-ya| for
/// all a; (iv) |x+lambda y| = |x-lambda y| for all complex lambda.
struct OrthogonalityReport {
    std::array<bool, 4> conditions{};
    std::array<std::optional<OrthogonalityWitness>, 4> witnesses;

    bool agree() const;
};

/// (ii) runs over all matrix-unit pairs, which span the algebra, so it is
/// exact. (iii) and (iv) try the critical a = <y,x> and lambda in {1, -i, i}
/// first, then `trials` random a and lambda.
OrthogonalityReport lemma41_status(const ModuleElement& x, const ModuleElement& y, int trials, std::uint64_t seed,
                                   const ToleranceConfig& tol = {});

/// Scalars lambda with v*|x + lambda y|^2 v < v*|x|^2 v for a test vector v:
/// for each v among the extreme eigenvectors of the real and imaginary parts
/// of <x,y> and the eigenvectors of |x|^2, lambda = -conj(v*<x,y>v) / |yv|^2,
/// together with a tenth of it. Empty when <x,y> = 0.
std::vector<std::complex<double>> critical_lambdas(const ModuleElement& x, const ModuleElement& y);

struct OrderWitness {
    std::optional<ComplexMatrix> a{};
    std::optional<std::complex<double>> lambda{};
    double violation = 0.0; // minus the smallest eigenvalue of rhs - lhs
};

/// (vi) |x|^2 <= |x+ya|^2 for all a; (vii) |x|^2 <= |x+lambda y|^2 for all
/// lambda; (viii) |x| <= |x+ya| for all a; (ix) |x| <= |x+lambda y| for all
/// lambda. A verdict of true only means no violation was found.
struct OrderConditionsReport {
    std::array<bool, 4> no_violation{};
    std::array<std::optional<OrderWitness>, 4> witnesses;
    std::array<double, 4> max_violation{};
    int samples_per_condition = 0;

    bool all_hold() const;
};

OrderConditionsReport remark42_conditions(const ModuleElement& x, const ModuleElement& y, int trials,
                                          std::uint64_t seed, const ToleranceConfig& tol = {});

struct ActionWitness {
    ModuleElement x;
    ComplexMatrix a;
    double residual = 0.0;
};

struct LocalityReport {
    bool local = true;
    std::optional<ActionWitness> witness; // x a = 0 but (Tx) a != 0
    int pairs_checked = 0;
};

/// Builds x = z (1 - p) and a = p w for coordinate projections and, over the
/// full algebra, random rank-k projections p, so that x a = 0 exactly.
LocalityReport is_local(const MapUnderTest& t, int trials, std::uint64_t seed, const ToleranceConfig& tol = {});

struct LinearityReport {
    bool a_linear = true;
    std::optional<ActionWitness> witness; // T(x a) != (T x) a
};

/// T(xa) = (Tx)a on a real basis of the module against a real basis of the
/// algebra; both sides are real-bilinear in (x, a), so this is exact.
LinearityReport is_A_linear(const MapUnderTest& t, const ToleranceConfig& tol = {});

} // namespace angleguard
