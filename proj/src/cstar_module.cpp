#include "angleguard/cstar_module.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "angleguard/error.hpp"
#include "angleguard/generators.hpp"
#include "angleguard/random.hpp"

namespace angleguard {

namespace {

using cd = std::complex<double>;

void require_compatible(const ModuleElement& x, const ModuleElement& y) {
    if (!(x.shape() == y.shape())) fail(ErrorKind::input, "module elements differ in shape or algebra");
}

double op_norm(const ComplexMatrix& a) { return spectral_norm<double>(a); }

/// |x + w|^2 - |x - w|^2 = 2 (x* w + w* x)
ComplexMatrix cross_difference(const ModuleElement& x, const ComplexMatrix& w) {
    const ComplexMatrix c = x.matrix().adjoint() * w;
    return 2.0 * (c + c.adjoint());
}

struct Comparison {
    bool violated = false;
    double violation = 0.0;
};

Comparison compare(const Hermitian& lhs, const Hermitian& rhs, const ToleranceConfig& tol) {
    if (loewner_leq(lhs, rhs, tol)) return {};
    return {true, std::max(0.0, -loewner_gap(lhs, rhs))};
}

void record(OrderConditionsReport& report, int index, const Comparison& cmp, OrderWitness witness) {
    const auto k = static_cast<std::size_t>(index);
    if (!cmp.violated) return;
    report.no_violation[k] = false;
    if (cmp.violation >= report.max_violation[k]) {
        report.max_violation[k] = cmp.violation;
        witness.violation = cmp.violation;
        report.witnesses[k] = std::move(witness);
    }
}

} // namespace

ComplexMatrix mod_inner(const ModuleElement& x, const ModuleElement& y) {
    require_compatible(x, y);
    return x.matrix().adjoint() * y.matrix();
}

Hermitian mod_abs_sq(const ModuleElement& x) { return Hermitian(x.matrix().adjoint() * x.matrix()); }

Hermitian mod_abs(const ModuleElement& x, const ToleranceConfig& tol) { return psd_sqrt(mod_abs_sq(x), tol); }

double mod_norm(const ModuleElement& x) { return op_norm(x.matrix()); }

bool moduli_equal(const ModuleElement& x, const ModuleElement& y, const ToleranceConfig& tol) {
    if (x.algebra() != y.algebra()) fail(ErrorKind::input, "moduli over different algebras");
    const ComplexMatrix p = x.matrix().adjoint() * x.matrix();
    const ComplexMatrix q = y.matrix().adjoint() * y.matrix();
    return (p - q).norm() <= tol.abs_tol + tol.rel_tol * (p.norm() + q.norm());
}

bool modulus_leq(const ModuleElement& x, const ModuleElement& y, const ToleranceConfig& tol) {
    if (x.algebra() != y.algebra()) fail(ErrorKind::input, "moduli over different algebras");
    return loewner_leq(mod_abs(x, tol), mod_abs(y, tol), tol);
}

std::vector<cd> critical_lambdas(const ModuleElement& x, const ModuleElement& y) {
    const ComplexMatrix c = mod_inner(x, y);
    std::vector<cd> out;
    if (c.isZero(0.0)) return out;
    std::vector<Eigen::VectorXcd> directions;
    const auto extremes = [&](const ComplexMatrix& h) {
        const auto ed = herm_eigendecomp(Hermitian(h));
        directions.push_back(ed.basis.col(0));
        directions.push_back(ed.basis.col(ed.basis.cols() - 1));
    };
    extremes((c + c.adjoint()) / 2.0);
    extremes((c - c.adjoint()) / cd(0.0, 2.0));
    const auto ed = herm_eigendecomp(mod_abs_sq(x));
    for (Eigen::Index k = 0; k < ed.basis.cols(); ++k) directions.push_back(ed.basis.col(k));
    for (const auto& v : directions) {
        const cd alpha = v.dot(c * v);
        const double beta = (y.matrix() * v).squaredNorm();
        if (std::abs(alpha) == 0.0 || beta == 0.0) continue;
        const cd lambda = -std::conj(alpha) / beta;
        out.push_back(lambda);
        out.push_back(0.1 * lambda);
    }
    return out;
}

bool OrthogonalityReport::agree() const {
    return std::all_of(conditions.begin(), conditions.end(), [&](bool c) { return c == conditions[0]; });
}

OrthogonalityReport lemma41_status(const ModuleElement& x, const ModuleElement& y, int trials, std::uint64_t seed,
                                   const ToleranceConfig& tol) {
    require_compatible(x, y);
    if (trials < 0) fail(ErrorKind::input, "trials must be >= 0");
    const AlgebraSpec& algebra = x.algebra();
    const double nx = mod_norm(x);
    const double ny = mod_norm(y);
    const double bound = tol.abs_tol + tol.rel_tol * nx * ny;
    OrthogonalityReport report;
    report.conditions.fill(true);

    const ComplexMatrix c = mod_inner(x, y);
    if (op_norm(c) > bound) {
        report.conditions[0] = false;
        report.witnesses[0] = OrthogonalityWitness{.residual = op_norm(c)};
    }

    const auto units = algebra.matrix_units();
    for (const auto& b : units) {
        if (!report.conditions[1]) break;
        for (const auto& a : units) {
            const double r = op_norm(mod_inner(x.act(b), y.act(a)));
            if (r > bound) {
                report.conditions[1] = false;
                report.witnesses[1] = OrthogonalityWitness{.a = a, .b = b, .residual = r};
                break;
            }
        }
    }

    // |x + ya|^2 - |x - ya|^2 = 2(<x,y>a + a*<y,x>); at a = <y,x> this is
    // 4 <x,y><y,x>, whose norm exceeds the bound exactly when (i) fails.
    Rng rng = Rng::for_trial(seed, 0);
    std::vector<ComplexMatrix> as{c.adjoint()};
    for (int k = 0; k < trials; ++k) as.push_back(gen::random_algebra_element(rng, algebra));
    for (const auto& a : as) {
        const double r = op_norm(cross_difference(x, y.matrix() * a));
        if (r > tol.abs_tol + tol.rel_tol * 4.0 * nx * ny * op_norm(a)) {
            report.conditions[2] = false;
            report.witnesses[2] = OrthogonalityWitness{.a = a, .residual = r};
            break;
        }
    }

    std::vector<cd> lambdas{cd(1.0), cd(0.0, -1.0), cd(0.0, 1.0)};
    for (int k = 0; k < trials; ++k)
        lambdas.push_back(std::polar(rng.uniform(0.0, 2.0), rng.uniform(0.0, 2.0 * std::numbers::pi)));
    for (const cd lambda : lambdas) {
        const double r = op_norm(cross_difference(x, lambda * y.matrix()));
        if (r > tol.abs_tol + tol.rel_tol * 4.0 * nx * ny * std::abs(lambda)) {
            report.conditions[3] = false;
            report.witnesses[3] = OrthogonalityWitness{.lambda = lambda, .residual = r};
            break;
        }
    }
    return report;
}

bool OrderConditionsReport::all_hold() const {
    return std::all_of(no_violation.begin(), no_violation.end(), [](bool b) { return b; });
}

OrderConditionsReport remark42_conditions(const ModuleElement& x, const ModuleElement& y, int trials,
                                          std::uint64_t seed, const ToleranceConfig& tol) {
    require_compatible(x, y);
    if (trials < 0) fail(ErrorKind::input, "trials must be >= 0");
    const AlgebraSpec& algebra = x.algebra();
    OrderConditionsReport report;
    report.no_violation.fill(true);
    report.max_violation.fill(0.0);

    const Hermitian x_sq = mod_abs_sq(x);
    const Hermitian x_abs = psd_sqrt(x_sq, tol);
    const ComplexMatrix c = mod_inner(x, y);
    const double ny = mod_norm(y);

    Rng rng = Rng::for_trial(seed, 0);
    std::vector<ComplexMatrix> as;
    if (ny > 0.0) {
        // a = -<y,x>/||y||^2 makes |x + ya|^2 <= |x|^2 - <x,y><y,x>/||y||^2.
        const ComplexMatrix a0 = -c.adjoint() / (ny * ny);
        for (const double s : {1.0, 0.5, 0.1}) as.push_back(s * a0);
    }
    for (int k = 0; k < trials; ++k) {
        ComplexMatrix a = gen::random_algebra_element(rng, algebra);
        const double na = op_norm(a);
        if (na > 0.0) a *= rng.uniform(0.0, 2.0) / na;
        as.push_back(std::move(a));
    }

    std::vector<cd> lambdas{cd(1.0), cd(-1.0), cd(0.0, 1.0), cd(0.0, -1.0)};
    for (const cd lambda : critical_lambdas(x, y)) lambdas.push_back(lambda);
    for (const double r : {0.1, 0.01})
        for (const cd u : {cd(1.0), cd(-1.0), cd(0.0, 1.0), cd(0.0, -1.0)}) lambdas.push_back(r * u);
    for (int k = 0; k < trials; ++k)
        lambdas.push_back(std::polar(rng.uniform(0.0, 2.0), rng.uniform(0.0, 2.0 * std::numbers::pi)));

    const std::size_t samples = std::max(as.size(), lambdas.size());
    report.samples_per_condition = static_cast<int>(samples);

    for (const auto& a : as) {
        const ModuleElement z(x.shape(), x.matrix() + y.matrix() * a);
        const Hermitian z_sq = mod_abs_sq(z);
        record(report, 0, compare(x_sq, z_sq, tol), OrderWitness{.a = a});
        record(report, 2, compare(x_abs, psd_sqrt(z_sq, tol), tol), OrderWitness{.a = a});
    }
    for (const cd lambda : lambdas) {
        const ModuleElement z(x.shape(), x.matrix() + lambda * y.matrix());
        const Hermitian z_sq = mod_abs_sq(z);
        record(report, 1, compare(x_sq, z_sq, tol), OrderWitness{.lambda = lambda});
        record(report, 3, compare(x_abs, psd_sqrt(z_sq, tol), tol), OrderWitness{.lambda = lambda});
    }
    return report;
}

LocalityReport is_local(const MapUnderTest& t, int trials, std::uint64_t seed, const ToleranceConfig& tol) {
    if (trials < 0) fail(ErrorKind::input, "trials must be >= 0");
    const ModuleShape& shape = t.domain();
    const AlgebraSpec& algebra = shape.algebra;
    const Eigen::Index n = algebra.n;
    LocalityReport report;
    if (n < 2) return report; // only p = 0 and p = 1, where x a = 0 forces x = 0 or a = 0

    const auto coordinate = [&](std::uint64_t mask) {
        ComplexMatrix p = ComplexMatrix::Zero(n, n);
        for (Eigen::Index k = 0; k < n; ++k)
            if ((mask >> k) & 1U) p(k, k) = 1.0;
        return p;
    };
    std::vector<ComplexMatrix> projections;
    if (n <= 6) {
        for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t(1) << n); ++mask) projections.push_back(coordinate(mask));
    }
    Rng proj_rng = Rng::for_trial(seed, 0);
    for (int k = 0; k < trials; ++k) {
        if (algebra.kind == AlgebraKind::full) {
            const auto rank = static_cast<Eigen::Index>(proj_rng.uniform_int(1, static_cast<int>(n - 1)));
            projections.push_back(gen::random_projection(proj_rng, n, rank));
        } else {
            std::uint64_t mask = 0;
            while (mask == 0 || mask + 1 == (std::uint64_t(1) << n)) mask = proj_rng.next_u64() & ((std::uint64_t(1) << n) - 1);
            projections.push_back(coordinate(mask));
        }
    }

    const ComplexMatrix id = ComplexMatrix::Identity(n, n);
    for (std::size_t k = 0; k < projections.size(); ++k) {
        Rng rng = Rng::for_trial(seed, k + 1);
        const ComplexMatrix& p = projections[k];
        const ModuleElement z = gen::random_element(rng, shape);
        const ModuleElement x(shape, z.matrix() * (id - p));
        const ComplexMatrix a = p * gen::random_algebra_element(rng, algebra);
        const ComplexMatrix image = t(x).matrix();
        const double r = (image * a).norm();
        ++report.pairs_checked;
        if (r > tol.abs_tol + tol.rel_tol * image.norm() * a.norm()) {
            report.local = false;
            report.witness = ActionWitness{x, a, r};
            break;
        }
    }
    return report;
}

LinearityReport is_A_linear(const MapUnderTest& t, const ToleranceConfig& tol) {
    const auto basis = real_basis(t.domain());
    std::vector<ComplexMatrix> scalars;
    for (const auto& u : t.domain().algebra.matrix_units()) {
        scalars.push_back(u);
        scalars.push_back(cd(0.0, 1.0) * u);
    }
    std::vector<ModuleElement> images;
    double scale = 0.0;
    for (const auto& e : basis) {
        images.push_back(t(e));
        scale = std::max(scale, images.back().matrix().norm());
    }
    LinearityReport report;
    for (std::size_t k = 0; k < basis.size(); ++k) {
        for (const auto& a : scalars) {
            const double r = (t(basis[k].act(a)).matrix() - images[k].matrix() * a).norm();
            if (r > tol.abs_tol + tol.rel_tol * scale) {
                report.a_linear = false;
                report.witness = ActionWitness{basis[k], a, r};
                return report;
            }
        }
    }
    return report;
}

} // namespace angleguard
