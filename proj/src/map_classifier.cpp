#include "angleguard/map_classifier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/SVD>

#include "angleguard/error.hpp"
#include "angleguard/generators.hpp"
#include "angleguard/random.hpp"

namespace angleguard {

namespace {

using cd = std::complex<double>;

// Sub-streams of one verification seed.
enum Stream : std::uint64_t { kHypothesis = 1, kOrthogonal, kReverse, kLocal, kFit, kEqual, kOrder, kProbe, kSimilar };

void require_nonzero(const MapUnderTest& t) {
    if (t.is_zero()) fail(ErrorKind::zero_map, "the map is zero");
}

double op_norm(const ComplexMatrix& a) { return spectral_norm<double>(a); }

void note(SampledVerdict& v, std::optional<double> violation, const ModuleElement& x, const ModuleElement& y) {
    ++v.samples;
    if (violation && v.holds) {
        v.holds = false;
        v.witness = PairWitness{x, y, *violation};
    }
}

void merge(SampledVerdict& into, const SampledVerdict& other) {
    into.samples += other.samples;
    if (into.holds && !other.holds) {
        into.holds = false;
        into.witness = other.witness;
    }
}

std::optional<double> orthogonality_violation(const ModuleElement& u, const ModuleElement& v,
                                              const ToleranceConfig& tol) {
    const double r = op_norm(mod_inner(u, v));
    if (r > tol.abs_tol + tol.rel_tol * mod_norm(u) * mod_norm(v)) return r;
    return std::nullopt;
}

std::optional<double> equality_violation(const ModuleElement& u, const ModuleElement& v, const ToleranceConfig& tol) {
    if (moduli_equal(u, v, tol)) return std::nullopt;
    return (mod_abs_sq(u).matrix() - mod_abs_sq(v).matrix()).norm();
}

std::optional<double> order_violation(const ModuleElement& u, const ModuleElement& v, const ToleranceConfig& tol) {
    const Hermitian lhs = mod_abs(u, tol);
    const Hermitian rhs = mod_abs(v, tol);
    if (loewner_leq(lhs, rhs, tol)) return std::nullopt;
    return std::max(0.0, -loewner_gap(lhs, rhs));
}

/// Pair (x, y) for the hypothesis of the order theorem, tested on the images.
void order_hypothesis_on(SampledVerdict& v, const MapUnderTest& t, const ModuleElement& x, const ModuleElement& y,
                         const ToleranceConfig& tol) {
    note(v, order_violation(t(x), t(y), tol), x, y);
}

/// Ordered pairs x = V y, then for each orthogonal pair (x, y) the pair
/// (x, x - y <Ty,Tx>/||Ty||^2), which is ordered because <x,y> = 0.
SampledVerdict order_hypothesis(const MapUnderTest& t, int trials, std::uint64_t seed, const ToleranceConfig& tol) {
    SampledVerdict v;
    for (int k = 0; k < trials; ++k) {
        Rng rng = Rng::for_trial(derive_seed(seed, kOrder), static_cast<std::uint64_t>(k));
        const auto [x, y] = gen::ordered_module_pair(rng, t.domain());
        order_hypothesis_on(v, t, x, y, tol);
    }
    for (int k = 0; k < trials; ++k) {
        Rng rng = Rng::for_trial(derive_seed(seed, kOrthogonal), static_cast<std::uint64_t>(k));
        const auto [x, y] = gen::orthogonal_module_pair(rng, t.domain());
        const ModuleElement ty = t(y);
        const double nty = mod_norm(ty);
        if (nty == 0.0) continue;
        const ComplexMatrix a = mod_inner(ty, t(x)) / (nty * nty);
        order_hypothesis_on(v, t, x, x - y.act(a), tol);
    }
    return v;
}

std::vector<ModuleElement> unit_probes(const ModuleShape& shape) {
    std::vector<ModuleElement> probes;
    const auto basis = real_basis(shape);
    for (std::size_t k = 0; k < basis.size(); k += 2) probes.push_back(basis[k]); // E_ij, skipping i E_ij
    return probes;
}

} // namespace

SampledVerdict check_op(const MapUnderTest& t, int trials, std::uint64_t seed, const ToleranceConfig& tol) {
    SampledVerdict v;
    for (int k = 0; k < trials; ++k) {
        Rng rng = Rng::for_trial(derive_seed(seed, kOrthogonal), static_cast<std::uint64_t>(k));
        const auto [x, y] = gen::orthogonal_module_pair(rng, t.domain());
        note(v, orthogonality_violation(t(x), t(y), tol), x, y);
    }
    return v;
}

SampledVerdict check_reverse_op(const MapUnderTest& t, int trials, std::uint64_t seed, const ToleranceConfig& tol) {
    const ModuleShape& shape = t.domain();
    const auto basis = real_basis(shape);
    std::vector<ModuleElement> images;
    for (const auto& e : basis) images.push_back(t(e));
    const auto d = static_cast<Eigen::Index>(basis.size());
    const Eigen::Index n = shape.n();

    SampledVerdict v;
    for (int k = 0; k < trials; ++k) {
        Rng rng = Rng::for_trial(derive_seed(seed, kReverse), static_cast<std::uint64_t>(k));
        const ModuleElement x = gen::random_element(rng, shape);
        const ModuleElement tx = t(x);
        // Columns: <Tx, T e_j> split into real and imaginary parts.
        Eigen::MatrixXd l(2 * n * n, d);
        for (Eigen::Index j = 0; j < d; ++j) {
            const ComplexMatrix c = mod_inner(tx, images[static_cast<std::size_t>(j)]);
            const Eigen::Map<const Eigen::VectorXcd> flat(c.data(), c.size());
            l.col(j) << flat.real(), flat.imag();
        }
        const Eigen::JacobiSVD<Eigen::MatrixXd> svd(l, Eigen::ComputeFullV);
        const Eigen::VectorXd& sigma = svd.singularValues();
        const double cutoff = tol.rel_tol * (sigma.size() > 0 ? sigma(0) : 0.0);
        Eigen::Index rank = 0;
        while (rank < sigma.size() && sigma(rank) > cutoff && sigma(rank) > 0.0) ++rank;
        if (rank == d) {
            ++v.samples;
            continue;
        }
        const Eigen::VectorXd coeff = svd.matrixV().rightCols(d - rank) * rng.normal_vector(d - rank);
        ComplexMatrix ym = ComplexMatrix::Zero(shape.m, n);
        for (Eigen::Index j = 0; j < d; ++j) ym += coeff(j) * basis[static_cast<std::size_t>(j)].matrix();
        const ModuleElement y(shape, ym);
        note(v, orthogonality_violation(x, y, tol), x, y);
    }
    return v;
}

SampledVerdict check_equal_modulus(const MapUnderTest& t, int trials, std::uint64_t seed, const ToleranceConfig& tol) {
    SampledVerdict v;
    for (int k = 0; k < trials; ++k) {
        Rng rng = Rng::for_trial(derive_seed(seed, kEqual), static_cast<std::uint64_t>(k));
        const auto [x, y] = gen::equal_modulus_pair(rng, t.domain());
        note(v, equality_violation(t(x), t(y), tol), x, y);
    }
    return v;
}

SampledVerdict check_order(const MapUnderTest& t, int trials, std::uint64_t seed, const ToleranceConfig& tol) {
    SampledVerdict v;
    for (int k = 0; k < trials; ++k) {
        Rng rng = Rng::for_trial(derive_seed(seed, kOrder), static_cast<std::uint64_t>(k));
        const auto [x, y] = gen::ordered_module_pair(rng, t.domain());
        order_hypothesis_on(v, t, x, y, tol);
    }
    return v;
}

GammaFit gamma_fit(const MapUnderTest& t, int trials, std::uint64_t seed) {
    require_nonzero(t);
    std::vector<ModuleElement> xs = unit_probes(t.domain());
    const std::size_t units = xs.size();
    for (int k = 0; k < trials; ++k) {
        Rng rng = Rng::for_trial(derive_seed(seed, kFit), static_cast<std::uint64_t>(k));
        xs.push_back(gen::random_element(rng, t.domain()));
    }
    std::vector<ModuleElement> txs;
    for (const auto& x : xs) txs.push_back(t(x));

    GammaFit fit;
    double sum = 0.0;
    int count = 0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const double base = op_norm(mod_inner(xs[k], xs[k]));
        if (base == 0.0) continue;
        sum += op_norm(mod_inner(txs[k], txs[k])) / base;
        ++count;
    }
    fit.gamma = sum / count;

    const auto pair = [&](std::size_t i, std::size_t j) {
        const ComplexMatrix ip = mod_inner(xs[i], xs[j]);
        fit.residual = std::max(fit.residual, (mod_inner(txs[i], txs[j]) - fit.gamma * ip).norm());
        fit.scale = std::max(fit.scale, ip.norm());
        ++fit.samples;
    };
    for (std::size_t i = 0; i < units; ++i)
        for (std::size_t j = 0; j < units; ++j) pair(i, j);
    for (std::size_t k = units; k < xs.size(); ++k) {
        pair(k, k);
        if (k + 1 < xs.size()) pair(k, k + 1);
    }
    return fit;
}

SimilarityVerdict module_similarity(const MapUnderTest& t, int trials, std::uint64_t seed,
                                    const ToleranceConfig& tol) {
    require_nonzero(t);
    std::vector<ModuleElement> xs = unit_probes(t.domain());
    for (int k = 0; k < trials; ++k) {
        Rng rng = Rng::for_trial(derive_seed(seed, kSimilar), static_cast<std::uint64_t>(k));
        xs.push_back(gen::random_element(rng, t.domain()));
    }
    std::vector<double> ratios;
    for (const auto& x : xs) ratios.push_back(mod_norm(t(x)) / mod_norm(x));
    const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
    double spread = *hi - *lo;
    bool similar = spread <= tol.rel_tol * *hi;

    if (const auto* left = std::get_if<LeftMultiplication>(&t.kind())) {
        // ||Sx|| = gamma ||x|| for all x iff S* S = gamma^2 I.
        const Eigen::VectorXd sigma = singular_values<double>(left->s);
        const double s_spread = sigma.maxCoeff() - sigma.minCoeff();
        similar = similar && left->s.rows() >= left->s.cols() && s_spread <= tol.rel_tol * sigma.maxCoeff();
        spread = std::max(spread, s_spread);
    }

    SimilarityVerdict verdict;
    verdict.is_similarity = similar;
    verdict.residual = spread;
    if (similar) {
        double mean = 0.0;
        for (const double r : ratios) mean += r;
        verdict.gamma = mean / static_cast<double>(ratios.size());
    }
    return verdict;
}

bool ClassificationReport::consistent() const {
    if (strongly_op.holds && !op.holds) return false;
    if (similarity.is_similarity && !(op.holds && strongly_op.holds && cond_iv.holds && cond_v.holds)) return false;
    return true;
}

ClassificationReport classify(const MapUnderTest& t, int trials, std::uint64_t seed, const ToleranceConfig& tol) {
    require_nonzero(t);
    ClassificationReport report;
    report.op = check_op(t, trials, seed, tol);
    report.strongly_op = report.op;
    merge(report.strongly_op, check_reverse_op(t, trials, seed, tol));
    report.similarity = module_similarity(t, trials, seed, tol);
    report.cond_iv = check_equal_modulus(t, trials, seed, tol);
    report.cond_v = check_order(t, trials, seed, tol);
    report.local = is_local(t, trials, derive_seed(seed, kLocal), tol).local;
    report.a_linear = is_A_linear(t, tol).a_linear;
    report.gamma_fit = gamma_fit(t, trials, seed);
    return report;
}

ImplicationReport verify_thm43(const MapUnderTest& t, int trials, std::uint64_t seed, const ToleranceConfig& tol) {
    require_nonzero(t);
    ImplicationReport report;
    for (int k = 0; k < trials; ++k) {
        Rng rng = Rng::for_trial(derive_seed(seed, kHypothesis), static_cast<std::uint64_t>(k));
        const auto [x, y] = gen::equal_modulus_pair(rng, t.domain());
        note(report.hypothesis, equality_violation(t(x), t(y), tol), x, y);
    }
    for (int k = 0; k < trials; ++k) {
        Rng rng = Rng::for_trial(derive_seed(seed, kOrthogonal), static_cast<std::uint64_t>(k));
        const auto [x, y] = gen::orthogonal_module_pair(rng, t.domain());
        // <x,y> = 0 gives |x + lambda y| = |x - lambda y|.
        for (const cd lambda : {cd(1.0), cd(0.0, 1.0)}) {
            const ModuleElement u = x + lambda * y;
            const ModuleElement w = x - lambda * y;
            note(report.hypothesis, equality_violation(t(u), t(w), tol), u, w);
        }
    }
    report.conclusion = check_op(t, trials, seed, tol);
    return report;
}

ImplicationReport verify_thm44(const MapUnderTest& t, int trials, std::uint64_t seed, const ToleranceConfig& tol) {
    require_nonzero(t);
    if (!is_A_linear(t, tol).a_linear) fail(ErrorKind::precondition, "the map is not module-linear");
    ImplicationReport report;
    report.hypothesis = order_hypothesis(t, trials, seed, tol);
    report.conclusion = check_op(t, trials, seed, tol);
    return report;
}

EquivalenceReport verify_cor411(const MapUnderTest& t, int trials, std::uint64_t seed, const ToleranceConfig& tol) {
    if (t.domain().algebra.kind != AlgebraKind::full)
        fail(ErrorKind::precondition, "the equivalence needs the full matrix algebra");
    require_nonzero(t);
    if (!is_A_linear(t, tol).a_linear) fail(ErrorKind::precondition, "the map is not module-linear");
    EquivalenceReport report;
    report.op = check_op(t, trials, seed, tol);
    report.order = order_hypothesis(t, trials, seed, tol);
    return report;
}

LocalityTheoremReport verify_thm410(const MapUnderTest& t, int trials, std::uint64_t seed, int probes,
                                    const ToleranceConfig& tol) {
    if (t.domain().algebra.kind != AlgebraKind::full)
        fail(ErrorKind::precondition, "the locality theorem needs the full matrix algebra");
    require_nonzero(t);
    LocalityTheoremReport report;
    report.local = is_local(t, trials, derive_seed(seed, kLocal), tol);
    report.op = check_op(t, trials, seed, tol);
    if (!report.hypotheses_hold()) return report;

    report.fit = gamma_fit(t, trials, seed);
    report.fit_ok = report.fit.residual <= tol.abs_tol + tol.rel_tol * report.fit.gamma * report.fit.scale;
    report.equal_modulus = check_equal_modulus(t, trials, seed, tol);
    report.order = check_order(t, trials, seed, tol);

    const double root = std::sqrt(report.fit.gamma);
    for (int k = 0; k < probes; ++k) {
        Rng rng = Rng::for_trial(derive_seed(seed, kProbe), static_cast<std::uint64_t>(k));
        const ModuleElement x = gen::random_element(rng, t.domain());
        const ModuleElement tx = t(x);
        // Decided on squares, |Tx|^2 = gamma |x|^2; the root error is reported.
        const ComplexMatrix sq_diff = mod_abs_sq(tx).matrix() - report.fit.gamma * mod_abs_sq(x).matrix();
        const double sq_scale = report.fit.gamma * mod_abs_sq(x).frobenius_norm();
        std::optional<double> violation;
        if (sq_diff.norm() > tol.abs_tol + tol.rel_tol * sq_scale) violation = sq_diff.norm();
        const ComplexMatrix scaled = root * mod_abs(x, tol).matrix();
        const double err = (mod_abs(tx, tol).matrix() - scaled).norm() / std::max(1.0, scaled.norm());
        report.max_scaling_error = std::max(report.max_scaling_error, err);
        note(report.scaling, violation, x, tx);
    }
    return report;
}

ImplicationReport verify_remark45(const MapUnderTest& t, int trials, std::uint64_t seed, const ToleranceConfig& tol) {
    const ModuleShape m2{2, AlgebraSpec{2, AlgebraKind::full}};
    if (!(t.domain() == m2) || !(t.codomain() == m2)) fail(ErrorKind::input, "the map must act on M_2 over M_2");
    require_nonzero(t);
    ImplicationReport report;
    for (int k = 0; k < trials; ++k) {
        Rng rng = Rng::for_trial(derive_seed(seed, kOrder), static_cast<std::uint64_t>(k));
        const auto [x, y] = gen::ordered_module_pair(rng, m2);
        order_hypothesis_on(report.hypothesis, t, x, y, tol);
    }
    for (int k = 0; k < trials; ++k) {
        Rng rng = Rng::for_trial(derive_seed(seed, kOrthogonal), static_cast<std::uint64_t>(k));
        const auto [a, b] = gen::orthogonal_module_pair(rng, m2);
        // A* B = 0 gives |A| <= |A + mu B| for every mu.
        std::vector<cd> mus{cd(1.0), cd(-1.0), cd(0.0, 1.0), cd(0.0, -1.0)};
        for (const cd mu : critical_lambdas(t(a), t(b))) {
            mus.push_back(mu);
            mus.push_back(std::conj(mu)); // T may be conjugate-linear
        }
        for (int r = 0; r < 2; ++r) mus.push_back(std::polar(rng.uniform(0.0, 2.0), rng.uniform(0.0, 2.0 * std::numbers::pi)));
        for (const cd mu : mus) order_hypothesis_on(report.hypothesis, t, a, a + mu * b, tol);
    }
    report.conclusion = check_op(t, trials, seed, tol);
    return report;
}

} // namespace angleguard
