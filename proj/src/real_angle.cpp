#include "angleguard/real_angle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "angleguard/error.hpp"
#include "angleguard/generators.hpp"
#include "angleguard/random.hpp"

namespace angleguard {

namespace {

constexpr double pi = std::numbers::pi;

void require_pair(const RealVector& x, const RealVector& y, const ToleranceConfig& tol) {
    require_finite(x, "vector x");
    require_finite(y, "vector y");
    if (x.size() != y.size()) fail(ErrorKind::input, "vectors differ in dimension");
    if (x.norm() <= tol.abs_tol || y.norm() <= tol.abs_tol) fail(ErrorKind::input, "zero vector");
}

double cosine(const RealVector& x, const RealVector& y) {
    return std::clamp(x.dot(y) / (x.norm() * y.norm()), -1.0, 1.0);
}

bool nearly_equal(double a, double b, double rel) {
    return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

bool images_orthogonal(const RealVector& u, const RealVector& v, const ToleranceConfig& tol) {
    return std::abs(u.dot(v)) <= tol.rel_tol * u.norm() * v.norm();
}

Eigen::MatrixXd right_singular_vectors(const RealLinearMap& t) {
    const auto ed = herm_eigendecomp(Hermitian(ComplexMatrix(t.transpose() * t)));
    return ed.basis.real();
}

} // namespace

Angle::Angle(double radians) : radians_(radians) {
    if (!std::isfinite(radians) || radians < 0.0 || radians > pi) fail(ErrorKind::input, "angle outside [0, pi]");
}

Angle angle(const RealVector& x, const RealVector& y, const ToleranceConfig& tol) {
    require_pair(x, y, tol);
    const RealVector xn = x / x.norm();
    const RealVector yn = y / y.norm();
    return Angle(std::min(pi, 2.0 * std::atan2((xn - yn).norm(), (xn + yn).norm())));
}

bool is_orthogonal(const RealVector& x, const RealVector& y, const ToleranceConfig& tol) {
    require_pair(x, y, tol);
    return std::abs(x.dot(y)) <= tol.rel_tol * x.norm() * y.norm();
}

bool is_parallel(const RealVector& x, const RealVector& y, const ToleranceConfig& tol) {
    const double a = angle(x, y, tol).radians();
    return a <= tol.rel_tol || a >= pi - tol.rel_tol;
}

bool are_dependent(const RealVector& x, const RealVector& y, const ToleranceConfig& tol) {
    require_finite(x, "vector x");
    require_finite(y, "vector y");
    if (x.size() != y.size()) fail(ErrorKind::input, "vectors differ in dimension");
    const double scale = x.norm() * y.norm();
    if (scale == 0.0) return true;
    double worst = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i)
        for (Eigen::Index j = i + 1; j < x.size(); ++j) worst = std::max(worst, std::abs(x(i) * y(j) - x(j) * y(i)));
    return worst <= tol.rel_tol * scale;
}

double lambda_equal_norm(const RealVector& x, const RealVector& y, Angle theta, const ToleranceConfig& tol) {
    require_pair(x, y, tol);
    const double th = theta.radians();
    if (!(th > 0.0 && th < pi)) fail(ErrorKind::precondition, "theta must lie in (0, pi)");
    const double nx = x.norm();
    const double ny = y.norm();
    if (!nearly_equal(nx, ny, tol.rel_tol)) fail(ErrorKind::precondition, "norms differ");
    const double between = angle(x, y, tol).radians();
    const double sin_between = std::sin(between);
    if (sin_between * sin_between <= tol.abs_tol) fail(ErrorKind::degenerate, "vectors are linearly dependent");
    if (std::abs(th - between) <= kExcludedAngleBand) fail(ErrorKind::excluded_angle, "theta equals angle(x, y)");

    const double alpha = nx * nx;
    const double d = x.dot(y);
    const double root = std::sqrt(std::max(0.0, (alpha - d) * (alpha + d)));
    return -(d - root / std::tan(th)) / alpha;
}

bool lambda_witness_check(const RealVector& x, const RealVector& y, double lambda, Angle theta,
                          const ToleranceConfig& tol) {
    if (lambda == 0.0) fail(ErrorKind::precondition, "lambda must be nonzero");
    require_pair(x, y, tol);
    const RealVector u = x + lambda * y;
    const RealVector w = y + lambda * x;
    if (u.norm() <= tol.abs_tol || w.norm() <= tol.abs_tol) fail(ErrorKind::input, "zero combination vector");
    const double th = theta.radians();
    return std::abs(angle(u, y, tol).radians() - th) <= tol.rel_tol &&
           std::abs(angle(w, x, tol).radians() - th) <= tol.rel_tol;
}

double mu_witness(const RealVector& x, const RealVector& y, const ToleranceConfig& tol) {
    if (is_orthogonal(x, y, tol)) fail(ErrorKind::input, "mu is undefined for orthogonal vectors");
    return x.dot(y) > 0.0 ? 1.0 : -1.0;
}

SimilarityVerdict similarity_gamma(const RealLinearMap& t, const ToleranceConfig& tol) {
    require_finite(t, "linear map");
    if (t.isZero(0.0)) fail(ErrorKind::zero_map, "similarity test needs a nonzero map");
    const Eigen::VectorXd sigma = singular_values<double>(t.cast<std::complex<double>>());
    const double top = sigma(0);
    const double bottom = sigma(sigma.size() - 1);
    SimilarityVerdict v;
    v.residual = top - bottom;
    v.is_similarity = t.cols() <= t.rows() && v.residual <= tol.rel_tol * top;
    if (v.is_similarity) v.gamma = sigma.mean();
    return v;
}

bool SimilarityConditionsReport::all_sampled_pass() const {
    return std::all_of(conditions.begin(), conditions.end(), [](const ConditionVerdict& c) { return c.sampled; });
}

bool SimilarityConditionsReport::consistent() const {
    return std::all_of(conditions.begin(), conditions.end(),
                       [&](const ConditionVerdict& c) { return c.agree() && c.analytic == similarity.is_similarity; });
}

SimilarityConditionsReport thm35_conditions(const RealLinearMap& t, int trials, std::uint64_t seed,
                                            const ToleranceConfig& tol) {
    tol.validate();
    require_finite(t, "linear map");
    if (t.isZero(0.0)) fail(ErrorKind::zero_map, "conditions need a nonzero map");
    if (t.cols() < 2) fail(ErrorKind::precondition, "angle conditions need dimension >= 2");
    if (trials < 1) fail(ErrorKind::input, "trials must be >= 1");

    const Eigen::Index n = t.cols();
    SimilarityConditionsReport report;
    report.similarity = similarity_gamma(t, tol);
    for (auto& c : report.conditions) c.analytic = report.similarity.is_similarity;

    auto record = [](ConditionVerdict& c, const RealVector& x, const RealVector& y) {
        if (c.sampled) {
            c.sampled = false;
            c.witness = RealWitness{x, y};
        }
    };

    const Eigen::MatrixXd basis = right_singular_vectors(t);
    const RealVector strongest = basis.col(0);
    const RealVector weakest = basis.col(n - 1);

    // (i)
    if (!report.similarity.is_similarity) record(report.conditions[0], strongest, weakest);

    // (ii) injectivity and cosine preservation
    {
        auto& c = report.conditions[1];
        const bool injective = t.cols() <= t.rows() && (t * weakest).norm() > tol.rel_tol * (t * strongest).norm();
        if (!injective) record(c, weakest, strongest);
        Rng rng = Rng::for_trial(seed, 1);
        for (int k = 0; k < trials && c.sampled; ++k) {
            const RealVector x = rng.normal_vector(n);
            const RealVector y = rng.normal_vector(n);
            const RealVector tx = t * x;
            const RealVector ty = t * y;
            if (tx.norm() == 0.0 || ty.norm() == 0.0 || std::abs(cosine(tx, ty) - cosine(x, y)) > tol.rel_tol)
                record(c, x, y);
        }
    }

    // (iii) x _|_ y <=> Tx _|_ Ty
    {
        auto& c = report.conditions[2];
        Rng rng = Rng::for_trial(seed, 2);
        for (int k = 0; k < trials && c.sampled; ++k) {
            const auto [x, y] = gen::orthogonal_pair(rng, n);
            if (!images_orthogonal(t * x, t * y, tol)) record(c, x, y);
            // reverse: choose y' with <Tx', Ty'> = 0 and require x' _|_ y'
            const RealVector xr = rng.normal_vector(n);
            const RealVector txr = t * xr;
            RealVector yr = rng.normal_vector(n);
            if (txr.squaredNorm() <= tol.abs_tol * tol.abs_tol * xr.squaredNorm()) {
                record(c, xr, xr);
                continue;
            }
            yr -= (txr.dot(t * yr) / txr.squaredNorm()) * xr;
            if (std::abs(xr.dot(yr)) > tol.rel_tol * xr.norm() * yr.norm()) record(c, xr, yr);
        }
    }

    // (iv) |x| = |y| <=> |Tx| = |Ty|
    {
        auto& c = report.conditions[3];
        Rng rng = Rng::for_trial(seed, 3);
        for (int k = 0; k < trials && c.sampled; ++k) {
            const auto [x, y] = gen::equal_norm_pair(rng, n);
            if (!nearly_equal((t * x).norm(), (t * y).norm(), tol.rel_tol)) record(c, x, y);
            const RealVector xr = rng.normal_vector(n);
            const RealVector zr = rng.normal_vector(n);
            const double tz = (t * zr).norm();
            if (tz == 0.0) continue;
            const RealVector yr = zr * ((t * xr).norm() / tz);
            if (!nearly_equal(xr.norm(), yr.norm(), tol.rel_tol)) record(c, xr, yr);
        }
    }

    // (v) |x| = |y| => |Tx| = |Ty|
    {
        auto& c = report.conditions[4];
        Rng rng = Rng::for_trial(seed, 4);
        for (int k = 0; k < trials && c.sampled; ++k) {
            const auto [x, y] = gen::equal_norm_pair(rng, n);
            if (!nearly_equal((t * x).norm(), (t * y).norm(), tol.rel_tol)) record(c, x, y);
        }
    }

    // (vi) |x| <= |y| => |Tx| <= |Ty|; most pairs sit on the boundary |x| = |y|
    {
        auto& c = report.conditions[5];
        Rng rng = Rng::for_trial(seed, 5);
        for (int k = 0; k < trials && c.sampled; ++k) {
            const RealVector y = gen::unit_vector(rng, n) * rng.uniform(0.5, 2.0);
            const double ratio = rng.uniform() < 0.75 ? 1.0 : rng.uniform();
            const RealVector x = gen::unit_vector(rng, n) * (ratio * y.norm());
            if ((t * x).norm() > (t * y).norm() * (1.0 + tol.rel_tol)) record(c, x, y);
        }
    }

    // (vii) x _|_ y => Tx _|_ Ty
    {
        auto& c = report.conditions[6];
        Rng rng = Rng::for_trial(seed, 6);
        for (int k = 0; k < trials && c.sampled; ++k) {
            const auto [x, y] = gen::orthogonal_pair(rng, n);
            if (!images_orthogonal(t * x, t * y, tol)) record(c, x, y);
        }
    }

    return report;
}

ThetaPreservingReport theta_preserving_check(const RealLinearMap& t, Angle theta, int trials, std::uint64_t seed,
                                             const ToleranceConfig& tol) {
    tol.validate();
    require_finite(t, "linear map");
    const double th = theta.radians();
    if (!(th > 0.0 && th < pi)) fail(ErrorKind::precondition, "theta must lie in (0, pi)");
    if (t.cols() < 2) fail(ErrorKind::precondition, "angle conditions need dimension >= 2");
    if (t.isZero(0.0)) fail(ErrorKind::precondition, "map must be nonzero");
    if (trials < 1) fail(ErrorKind::input, "trials must be >= 1");
    const Eigen::VectorXd sigma = singular_values<double>(t.cast<std::complex<double>>());
    if (t.cols() > t.rows() || sigma(sigma.size() - 1) <= tol.rel_tol * sigma(0))
        fail(ErrorKind::precondition, "map must be injective");

    const Eigen::Index n = t.cols();
    ThetaPreservingReport report;
    Rng rng = Rng::for_trial(seed, 0);
    for (int k = 0; k < trials; ++k) {
        // (i) forward: pairs at exactly theta
        {
            const auto [x, y] = gen::angle_theta_pair(rng, n, th, false);
            if (report.hypothesis_i && std::abs(angle(t * x, t * y, tol).radians() - th) > tol.rel_tol) {
                report.hypothesis_i = false;
                report.witness_i = RealWitness{x, y};
            }
        }
        // (i) reverse: pairs away from theta must stay away from theta
        {
            double phi = rng.uniform(0.0, pi);
            while (phi == 0.0 || std::abs(phi - th) < 1e-3) phi = rng.uniform(0.0, pi);
            const auto [x, y] = gen::angle_theta_pair(rng, n, phi, false);
            if (report.hypothesis_i && std::abs(angle(t * x, t * y, tol).radians() - th) <= tol.rel_tol) {
                report.hypothesis_i = false;
                report.witness_i = RealWitness{x, y};
            }
        }
        // (ii) equal norms at angle theta
        {
            const auto [x, y] = gen::angle_theta_pair(rng, n, th, true);
            if (report.hypothesis_ii && !nearly_equal((t * x).norm(), (t * y).norm(), tol.rel_tol)) {
                report.hypothesis_ii = false;
                report.witness_ii = RealWitness{x, y};
            }
        }
    }
    report.conclusion = similarity_gamma(t, tol).is_similarity;
    return report;
}

GramPair::GramPair(Eigen::MatrixXd g1, Eigen::MatrixXd g2, const ToleranceConfig& tol)
    : g1_(std::move(g1)), g2_(std::move(g2)) {
    if (g1_.rows() != g1_.cols() || g2_.rows() != g2_.cols() || g1_.rows() != g2_.rows())
        fail(ErrorKind::input, "Gram matrices must be square and of equal size");
    for (Eigen::MatrixXd* g : {&g1_, &g2_}) {
        require_finite(*g, "Gram matrix");
        const Hermitian h(g->cast<std::complex<double>>());
        if (min_eigenvalue(h) <= tol.abs_tol) fail(ErrorKind::input, "Gram matrix is not positive definite");
        *g = h.matrix().real();
    }
}

InnerProductComparison compare_inner_products(const GramPair& g, int trials, std::uint64_t seed,
                                              const ToleranceConfig& tol) {
    tol.validate();
    if (trials < 1) fail(ErrorKind::input, "trials must be >= 1");
    const Eigen::Index n = g.dim();

    // With g_k = R_k^T R_k, the identity map from (R^n, <.,.>_1) to (R^n, <.,.>_2)
    // is the Euclidean map R_2 R_1^{-1}.
    const Eigen::MatrixXd r1 = g.g1().llt().matrixU();
    const Eigen::MatrixXd r2 = g.g2().llt().matrixU();
    const Eigen::MatrixXd r1_inv = r1.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(n, n));
    const Eigen::MatrixXd t = r2 * r1_inv;
    const SimilarityVerdict s = similarity_gamma(t, tol);

    InnerProductComparison out;
    if (s.is_similarity) {
        const double gamma = *s.gamma;
        out.gamma = gamma;
        out.residual = (g.g2() - gamma * gamma * g.g1()).norm() / g.g2().norm();
    } else {
        out.residual = s.residual;
        // Eigenvectors of T^T T pulled back by R_1^{-1} are g1-orthonormal; the
        // extreme pair gives x = u + v, y = u - v orthogonal in form 1 only.
        const auto ed = herm_eigendecomp(Hermitian(ComplexMatrix(t.transpose() * t)));
        auto pulled_back = [&](Eigen::Index k) {
            RealVector u = r1_inv * ed.basis.col(k).real();
            for (Eigen::Index i = 0; i < n; ++i) {
                if (std::abs(u(i)) > 1e-12 * u.norm()) {
                    if (u(i) < 0) u = -u;
                    break;
                }
            }
            return u;
        };
        const RealVector low = pulled_back(n - 1);
        const RealVector high = pulled_back(0);
        InnerProductWitness w;
        w.x = low + high;
        w.y = low - high;
        w.condition = "orthogonality";
        w.form1 = w.x.dot(g.g1() * w.y);
        w.form2 = w.x.dot(g.g2() * w.y);
        out.witness = w;
    }

    // Sampled confirmation: random form-1 orthogonal pairs.
    Rng rng = Rng::for_trial(seed, 0);
    for (int k = 0; k < trials; ++k) {
        const RealVector x = rng.normal_vector(n);
        RealVector y = rng.normal_vector(n);
        y -= (x.dot(g.g1() * y) / x.dot(g.g1() * x)) * x;
        const double n2x = std::sqrt(x.dot(g.g2() * x));
        const double n2y = std::sqrt(y.dot(g.g2() * y));
        if (std::abs(x.dot(g.g2() * y)) > tol.rel_tol * n2x * n2y) ++out.sampled_violations;
    }
    return out;
}

RealVector norm_cube(const RealVector& x) { return x.squaredNorm() * x; }

EqualNormReport equal_norm_condition(const RealMap& t, Eigen::Index dim, int trials, std::uint64_t seed,
                                     const ToleranceConfig& tol) {
    if (dim < 1) fail(ErrorKind::input, "dimension must be >= 1");
    if (trials < 1) fail(ErrorKind::input, "trials must be >= 1");
    EqualNormReport report;
    Rng rng = Rng::for_trial(seed, 0);
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    auto probe = [&](const RealVector& x) {
        const double r = t(x).norm() / x.norm();
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    };
    const RealVector base = gen::unit_vector(rng, dim);
    probe(base);
    probe(2.0 * base);
    for (int k = 0; k < trials; ++k) {
        const auto [x, y] = gen::equal_norm_pair(rng, dim);
        if (report.holds && !nearly_equal(t(x).norm(), t(y).norm(), tol.rel_tol)) {
            report.holds = false;
            report.witness = RealWitness{x, y};
        }
        probe(x);
    }
    report.ratio_spread = hi > 0.0 ? (hi - lo) / hi : 0.0;
    report.is_similarity = hi > 0.0 && report.ratio_spread <= tol.rel_tol;
    return report;
}

} // namespace angleguard
