#include "angleguard/module.hpp"

#include "angleguard/error.hpp"

namespace angleguard {

namespace {

bool is_diagonal(const ComplexMatrix& a) {
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            if (i != j && a(i, j) != std::complex<double>(0.0)) return false;
    return true;
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

} // namespace

std::string_view to_string(AlgebraKind kind) { return kind == AlgebraKind::full ? "full" : "diagonal"; }

AlgebraKind parse_algebra_kind(std::string_view text) {
    if (text == "full") return AlgebraKind::full;
    if (text == "diagonal") return AlgebraKind::diagonal;
    fail(ErrorKind::input, "algebra kind must be 'full' or 'diagonal'");
}

bool AlgebraSpec::contains(const ComplexMatrix& a) const {
    if (a.rows() != n || a.cols() != n || !all_finite(a)) return false;
    return kind == AlgebraKind::full || is_diagonal(a);
}

std::vector<ComplexMatrix> AlgebraSpec::matrix_units() const {
    std::vector<ComplexMatrix> units;
    for (Eigen::Index k = 0; k < n; ++k) {
        for (Eigen::Index l = 0; l < n; ++l) {
            if (kind == AlgebraKind::diagonal && k != l) continue;
            ComplexMatrix e = ComplexMatrix::Zero(n, n);
            e(k, l) = 1.0;
            units.push_back(std::move(e));
        }
    }
    return units;
}

void ModuleShape::validate() const {
    if (m < 1 || algebra.n < 1) fail(ErrorKind::input, "module shape needs m >= 1 and n >= 1");
    if (algebra.kind == AlgebraKind::diagonal && m != algebra.n)
        fail(ErrorKind::input, "the diagonal algebra is used as a module over itself (m == n)");
}

ModuleElement::ModuleElement(const ModuleShape& shape, ComplexMatrix matrix)
    : shape_(shape), matrix_(std::move(matrix)) {
    shape_.validate();
    if (matrix_.rows() != shape_.m || matrix_.cols() != shape_.n())
        fail(ErrorKind::input, "module element does not match its shape");
    require_finite(matrix_, "module element");
    if (shape_.algebra.kind == AlgebraKind::diagonal && !is_diagonal(matrix_))
        fail(ErrorKind::input, "elements of the diagonal module must be diagonal");
}

ModuleElement ModuleElement::zero(const ModuleShape& shape) {
    return ModuleElement(shape, ComplexMatrix::Zero(shape.m, shape.n()));
}

ModuleElement ModuleElement::act(const ComplexMatrix& a) const {
    if (!algebra().contains(a)) fail(ErrorKind::input, "right action by an element outside the algebra");
    return ModuleElement(shape_, matrix_ * a);
}

ModuleElement operator+(const ModuleElement& x, const ModuleElement& y) {
    if (!(x.shape() == y.shape())) fail(ErrorKind::input, "module elements differ in shape");
    return ModuleElement(x.shape(), x.matrix() + y.matrix());
}

ModuleElement operator-(const ModuleElement& x, const ModuleElement& y) {
    if (!(x.shape() == y.shape())) fail(ErrorKind::input, "module elements differ in shape");
    return ModuleElement(x.shape(), x.matrix() - y.matrix());
}

ModuleElement operator*(std::complex<double> s, const ModuleElement& x) {
    return ModuleElement(x.shape(), s * x.matrix());
}

MapUnderTest::MapUnderTest(ModuleShape domain, ModuleShape codomain, MapKind kind)
    : domain_(domain), codomain_(codomain), kind_(std::move(kind)) {
    domain_.validate();
    codomain_.validate();
    if (!(domain_.algebra == codomain_.algebra)) fail(ErrorKind::input, "domain and codomain need the same algebra");
}

MapUnderTest MapUnderTest::left_mult(const ModuleShape& domain, ComplexMatrix s) {
    domain.validate();
    require_finite(s, "left factor");
    if (s.cols() != domain.m) fail(ErrorKind::input, "left factor must have m columns");
    if (domain.algebra.kind == AlgebraKind::diagonal && (s.rows() != domain.m || !is_diagonal(s)))
        fail(ErrorKind::input, "left factors on the diagonal module must be diagonal");
    const ModuleShape codomain{s.rows(), domain.algebra};
    return MapUnderTest(domain, codomain, LeftMultiplication{std::move(s)});
}

MapUnderTest MapUnderTest::general_linear(const ModuleShape& domain, Eigen::Index p, ComplexMatrix matrix) {
    domain.validate();
    require_finite(matrix, "coefficient matrix");
    if (domain.algebra.kind != AlgebraKind::full)
        fail(ErrorKind::input, "general linear maps are defined over the full algebra");
    const Eigen::Index n = domain.n();
    if (p < 1 || matrix.rows() != p * n || matrix.cols() != domain.m * n)
        fail(ErrorKind::input, "coefficient matrix must be (p n) x (m n)");
    return MapUnderTest(domain, ModuleShape{p, domain.algebra}, GeneralLinear{std::move(matrix)});
}

MapUnderTest MapUnderTest::diagonal_multiplier(Eigen::VectorXcd f0) {
    require_finite(f0, "multiplier");
    if (f0.isZero(0.0)) fail(ErrorKind::input, "multiplier must be nonzero");
    const ModuleShape shape{f0.size(), AlgebraSpec{f0.size(), AlgebraKind::diagonal}};
    return MapUnderTest(shape, shape, DiagonalMultiplier{std::move(f0)});
}

MapUnderTest MapUnderTest::entrywise_conjugation(const ModuleShape& domain) {
    return MapUnderTest(domain, domain, EntrywiseConjugation{});
}

ModuleElement MapUnderTest::operator()(const ModuleElement& x) const {
    if (!(x.shape() == domain_)) fail(ErrorKind::input, "element is outside the map's domain");
    const ComplexMatrix out = std::visit(
        overloaded{
            [&](const LeftMultiplication& k) -> ComplexMatrix { return k.s * x.matrix(); },
            [&](const GeneralLinear& k) -> ComplexMatrix {
                const Eigen::Map<const Eigen::VectorXcd> vec(x.matrix().data(), x.matrix().size());
                const Eigen::VectorXcd image = k.matrix * vec;
                return Eigen::Map<const ComplexMatrix>(image.data(), codomain_.m, codomain_.n());
            },
            [&](const DiagonalMultiplier& k) -> ComplexMatrix { return k.f0.asDiagonal() * x.matrix(); },
            [&](const EntrywiseConjugation&) -> ComplexMatrix { return x.matrix().conjugate(); },
        },
        kind_);
    return ModuleElement(codomain_, out);
}

std::string_view MapUnderTest::kind_name() const {
    if (std::holds_alternative<LeftMultiplication>(kind_)) return "left_mult";
    if (std::holds_alternative<GeneralLinear>(kind_)) return "general_linear";
    return "named_counterexample";
}

std::optional<std::string_view> MapUnderTest::tag() const {
    if (std::holds_alternative<DiagonalMultiplier>(kind_)) return kDiagonalMultiplier;
    if (std::holds_alternative<EntrywiseConjugation>(kind_)) return kEntrywiseConjugation;
    return std::nullopt;
}

bool MapUnderTest::is_zero() const {
    for (const auto& e : real_basis(domain_))
        if (!(*this)(e).matrix().isZero(0.0)) return false;
    return true;
}

std::vector<ModuleElement> real_basis(const ModuleShape& shape) {
    shape.validate();
    std::vector<ModuleElement> basis;
    for (Eigen::Index i = 0; i < shape.m; ++i) {
        for (Eigen::Index j = 0; j < shape.n(); ++j) {
            if (shape.algebra.kind == AlgebraKind::diagonal && i != j) continue;
            for (const std::complex<double> unit : {std::complex<double>(1.0), std::complex<double>(0.0, 1.0)}) {
                ComplexMatrix e = ComplexMatrix::Zero(shape.m, shape.n());
                e(i, j) = unit;
                basis.emplace_back(shape, std::move(e));
            }
        }
    }
    return basis;
}

} // namespace angleguard
