#pragma once

// Concrete inner product modules E = M_{m x n}(C) over A, a subalgebra of
// M_n(C) acting on the right, with <x, y> = x* y; and the linear maps between
// such modules that the classifier inspects.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "angleguard/linalg.hpp"

namespace angleguard {

enum class AlgebraKind { full, diagonal };

std::string_view to_string(AlgebraKind kind);
AlgebraKind parse_algebra_kind(std::string_view text);

/// Either all of M_n(C) or its diagonal subalgebra (functions on n points).
struct AlgebraSpec {
    Eigen::Index n = 1;
    AlgebraKind kind = AlgebraKind::full;

    bool contains(const ComplexMatrix& a) const;
    /// Complex basis of the algebra: E_kl (full) or E_kk (diagonal).
    std::vector<ComplexMatrix> matrix_units() const;

    friend bool operator==(const AlgebraSpec&, const AlgebraSpec&) = default;
};

/// Shape of E = M_{m x n} over A. The diagonal algebra is only used as a
/// module over itself, so it requires m == n.
struct ModuleShape {
    Eigen::Index m = 1;
    AlgebraSpec algebra;

    Eigen::Index n() const { return algebra.n; }
    void validate() const;

    friend bool operator==(const ModuleShape&, const ModuleShape&) = default;
};

class ModuleElement {
public:
    ModuleElement(const ModuleShape& shape, ComplexMatrix matrix);

    static ModuleElement zero(const ModuleShape& shape);

    const ModuleShape& shape() const { return shape_; }
    const AlgebraSpec& algebra() const { return shape_.algebra; }
    Eigen::Index m() const { return shape_.m; }
    const ComplexMatrix& matrix() const { return matrix_; }

    /// Right module action x a; `a` must belong to the algebra.
    ModuleElement act(const ComplexMatrix& a) const;

    friend ModuleElement operator+(const ModuleElement& x, const ModuleElement& y);
    friend ModuleElement operator-(const ModuleElement& x, const ModuleElement& y);
    friend ModuleElement operator*(std::complex<double> s, const ModuleElement& x);

private:
    ModuleShape shape_;
    ComplexMatrix matrix_;
};

inline constexpr std::string_view kNonlinearNormCube = "nonlinear_norm_cube";
inline constexpr std::string_view kDiagonalMultiplier = "diagonal_multiplier";
inline constexpr std::string_view kEntrywiseConjugation = "entrywise_conjugation";
inline constexpr std::array<std::string_view, 3> kCounterexampleTags = {kNonlinearNormCube, kDiagonalMultiplier,
                                                                        kEntrywiseConjugation};

/// x -> S x with S of shape p x m.
struct LeftMultiplication {
    ComplexMatrix s;
};

/// vec(Tx) = M vec(x) with column-major vec; M has shape (p n) x (m n).
struct GeneralLinear {
    ComplexMatrix matrix;
};

/// g -> f0 g on the diagonal algebra viewed as a module over itself.
struct DiagonalMultiplier {
    Eigen::VectorXcd f0;
};

/// x -> conj(x), entry by entry. Real-linear, not complex-linear.
struct EntrywiseConjugation {};

using MapKind = std::variant<LeftMultiplication, GeneralLinear, DiagonalMultiplier, EntrywiseConjugation>;

class MapUnderTest {
public:
    static MapUnderTest left_mult(const ModuleShape& domain, ComplexMatrix s);
    static MapUnderTest general_linear(const ModuleShape& domain, Eigen::Index p, ComplexMatrix matrix);
    static MapUnderTest diagonal_multiplier(Eigen::VectorXcd f0);
    static MapUnderTest entrywise_conjugation(const ModuleShape& domain);

    ModuleElement operator()(const ModuleElement& x) const;

    const ModuleShape& domain() const { return domain_; }
    const ModuleShape& codomain() const { return codomain_; }
    const MapKind& kind() const { return kind_; }

    /// "left_mult", "general_linear" or "named_counterexample".
    std::string_view kind_name() const;
    /// Registry tag for named counterexamples.
    std::optional<std::string_view> tag() const;

    /// True when T vanishes on a real basis of the domain.
    bool is_zero() const;

private:
    MapUnderTest(ModuleShape domain, ModuleShape codomain, MapKind kind);

    ModuleShape domain_;
    ModuleShape codomain_;
    MapKind kind_;
};

/// Real basis of M_{m x n} (or of the diagonal algebra): E_ij and i E_ij.
std::vector<ModuleElement> real_basis(const ModuleShape& shape);

} // namespace angleguard
