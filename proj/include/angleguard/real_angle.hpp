#pragma once

// Angles, orthogonality and similarity tests in the real inner product
// spaces R^n with the Euclidean inner product (or a Gram-matrix inner product
// for compare_inner_products).
//
// Tolerance conventions for this module: `abs_tol` bounds the norm below which
// a vector counts as zero; `rel_tol` bounds every dimensionless comparison
// (cosines, angles in radians, relative norm differences, singular value
// spread).

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "angleguard/linalg.hpp"

namespace angleguard {

using RealVector = Eigen::VectorXd;
using RealLinearMap = Eigen::MatrixXd;

/// An angle in [0, pi].
class Angle {
public:
    explicit Angle(double radians);
    double radians() const { return radians_; }

private:
    double radians_;
};

/// arccos(<x,y> / (|x||y|)), evaluated as 2 atan2(|x^ - y^|, |x^ + y^|) on the
/// normalized vectors so it stays accurate near 0 and pi.
Angle angle(const RealVector& x, const RealVector& y, const ToleranceConfig& tol = {});

bool is_orthogonal(const RealVector& x, const RealVector& y, const ToleranceConfig& tol = {});
bool is_parallel(const RealVector& x, const RealVector& y, const ToleranceConfig& tol = {});

/// True when every 2x2 minor x_i y_j - x_j y_i vanishes relative to |x||y|.
bool are_dependent(const RealVector& x, const RealVector& y, const ToleranceConfig& tol = {});

/// Exclusion band around angle(x, y) inside which lambda_equal_norm refuses theta.
inline constexpr double kExcludedAngleBand = 1e-6;

/// The unique nonzero lambda with x + lambda y and y + lambda x both at angle
/// theta to y and x respectively, for equal-norm independent x, y:
///
///     lambda = -(<x,y> - cot(theta) sqrt(|x|^4 - <x,y>^2)) / |x|^2
///
/// theta must lie in (0, pi) and differ from angle(x, y) by more than
/// kExcludedAngleBand.
double lambda_equal_norm(const RealVector& x, const RealVector& y, Angle theta, const ToleranceConfig& tol = {});

/// Checks that angle(x + lambda y, y) and angle(y + lambda x, x) both equal
/// theta within rel_tol radians.
bool lambda_witness_check(const RealVector& x, const RealVector& y, double lambda, Angle theta,
                          const ToleranceConfig& tol = {});

/// sign(<x,y>); for equal norms x + mu y is orthogonal to x - mu y.
double mu_witness(const RealVector& x, const RealVector& y, const ToleranceConfig& tol = {});

struct SimilarityVerdict {
    bool is_similarity = false;
    std::optional<double> gamma; // present iff is_similarity
    double residual = 0.0;       // sigma_max - sigma_min
};

/// Similarity test from the singular values of T (eigenvalues of T^T T).
SimilarityVerdict similarity_gamma(const RealLinearMap& t, const ToleranceConfig& tol = {});

struct RealWitness {
    RealVector x;
    RealVector y;
};

/// Verdict for one condition of the linear-map characterization. `sampled`
/// comes from random pairs, `analytic` from the singular values.
struct ConditionVerdict {
    bool sampled = true;
    bool analytic = true;
    std::optional<RealWitness> witness;

    bool agree() const { return sampled == analytic; }
};

/// Conditions (i)-(vii): similarity, injective cosine preservation, strong
/// orthogonality preservation, norm equality both ways, norm equality forward,
/// norm order forward, orthogonality preservation forward.
struct SimilarityConditionsReport {
    std::array<ConditionVerdict, 7> conditions;
    SimilarityVerdict similarity;

    bool all_sampled_pass() const;
    bool consistent() const;
};

SimilarityConditionsReport thm35_conditions(const RealLinearMap& t, int trials, std::uint64_t seed,
                                            const ToleranceConfig& tol = {});

/// Hypotheses of the fixed-angle similarity criterion for an injective linear
/// T and theta in (0, pi):
///   (i)  angle(x, y) = theta  <=>  angle(Tx, Ty) = theta
///   (ii) |x| = |y| and angle(x, y) = theta  =>  |Tx| = |Ty|
struct ThetaPreservingReport {
    bool hypothesis_i = true;
    bool hypothesis_ii = true;
    std::optional<RealWitness> witness_i;
    std::optional<RealWitness> witness_ii;
    bool conclusion = false; // similarity_gamma(T).is_similarity

    bool hypotheses_hold() const { return hypothesis_i && hypothesis_ii; }
    bool falsified() const { return hypotheses_hold() && !conclusion; }
};

ThetaPreservingReport theta_preserving_check(const RealLinearMap& t, Angle theta, int trials, std::uint64_t seed,
                                             const ToleranceConfig& tol = {});

/// Two inner products on R^n given by symmetric positive definite Gram
/// matrices: <x,y>_k = x^T g_k y.
class GramPair {
public:
    GramPair(Eigen::MatrixXd g1, Eigen::MatrixXd g2, const ToleranceConfig& tol = {});

    const Eigen::MatrixXd& g1() const { return g1_; }
    const Eigen::MatrixXd& g2() const { return g2_; }
    Eigen::Index dim() const { return g1_.rows(); }

private:
    Eigen::MatrixXd g1_;
    Eigen::MatrixXd g2_;
};

struct InnerProductWitness {
    RealVector x;
    RealVector y;
    std::string condition; // "orthogonality" or "equal_norm"
    double form1 = 0.0;    // <x,y>_1, or |x|_1 - |y|_1
    double form2 = 0.0;    // <x,y>_2, or |x|_2 - |y|_2
};

struct InnerProductComparison {
    std::optional<double> gamma; // |x|_2 = gamma |x|_1 when present
    double residual = 0.0;       // |g2 - gamma^2 g1|_F / |g2|_F, or the singular spread
    std::optional<InnerProductWitness> witness;
    int sampled_violations = 0;  // random form-1 orthogonal pairs not orthogonal in form 2
};

InnerProductComparison compare_inner_products(const GramPair& g, int trials, std::uint64_t seed,
                                              const ToleranceConfig& tol = {});

/// A possibly nonlinear self-map of R^n.
using RealMap = std::function<RealVector(const RealVector&)>;

/// x -> |x|^2 x, which keeps equal norms equal without being a similarity.
RealVector norm_cube(const RealVector& x);

struct EqualNormReport {
    bool holds = true; // |x| = |y| => |Tx| = |Ty| on every sampled pair
    std::optional<RealWitness> witness;
    double ratio_spread = 0.0; // spread of |Tx|/|x| over the probes, relative to the max
    bool is_similarity = false;
};

/// Samples the equal-norm implication for an arbitrary map and probes whether
/// |Tx|/|x| is constant, including the pair x, 2x.
EqualNormReport equal_norm_condition(const RealMap& t, Eigen::Index dim, int trials, std::uint64_t seed,
                                     const ToleranceConfig& tol = {});

} // namespace angleguard
