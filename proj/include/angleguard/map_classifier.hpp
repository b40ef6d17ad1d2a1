#pragma once

// Verdicts about maps between modules: orthogonality preservation, the
// modulus and order implications, gamma extraction, and the locality
// pipeline. "For all" statements are sampled; a true verdict means that no
// violation was found among the reported number of samples.

#include <cstdint>
#include <optional>
#include <string>

#include "angleguard/cstar_module.hpp"
#include "angleguard/module.hpp"
#include "angleguard/real_angle.hpp"

namespace angleguard {

struct PairWitness {
    ModuleElement x;
    ModuleElement y;
    double residual = 0.0;
};

struct SampledVerdict {
    bool holds = true;
    std::optional<PairWitness> witness;
    int samples = 0;
};

/// <x,y> = 0 => <Tx,Ty> = 0 on generated orthogonal pairs.
SampledVerdict check_op(const MapUnderTest& t, int trials, std::uint64_t seed, const ToleranceConfig& tol = {});
/// <Tx,Ty> = 0 => <x,y> = 0. For each sampled x the y with <Tx,Ty> = 0 form
/// the null space of a real-linear map, which is computed and sampled.
SampledVerdict check_reverse_op(const MapUnderTest& t, int trials, std::uint64_t seed,
                                const ToleranceConfig& tol = {});
/// |x| = |y| => |Tx| = |Ty| on pairs y = U x.
SampledVerdict check_equal_modulus(const MapUnderTest& t, int trials, std::uint64_t seed,
                                   const ToleranceConfig& tol = {});
/// |x| <= |y| => |Tx| <= |Ty| on pairs x = V y with |V| <= 1.
SampledVerdict check_order(const MapUnderTest& t, int trials, std::uint64_t seed, const ToleranceConfig& tol = {});

struct GammaFit {
    double gamma = 0.0;    // <Tx,Ty> ~ gamma <x,y>
    double residual = 0.0; // max ||<Tx,Ty> - gamma <x,y>||_F over sampled pairs
    double scale = 0.0;    // max ||<x,y>||_F over the same pairs
    int samples = 0;
};

/// Mean of ||<Tx,Tx>|| / ||<x,x>|| over matrix units and random elements.
GammaFit gamma_fit(const MapUnderTest& t, int trials, std::uint64_t seed);

/// ||Tx|| = gamma ||x|| with gamma reported as the norm scale.
SimilarityVerdict module_similarity(const MapUnderTest& t, int trials, std::uint64_t seed,
                                    const ToleranceConfig& tol = {});

struct ClassificationReport {
    SampledVerdict op;
    SampledVerdict strongly_op; // both directions
    SimilarityVerdict similarity;
    SampledVerdict cond_iv;
    SampledVerdict cond_v;
    bool local = false;
    bool a_linear = false;
    GammaFit gamma_fit;

    /// strongly_op => op, and similarity => op, strongly_op, (iv), (v).
    bool consistent() const;
};

ClassificationReport classify(const MapUnderTest& t, int trials, std::uint64_t seed, const ToleranceConfig& tol = {});

/// Outcome of testing "hypothesis => conclusion" for one map.
struct ImplicationReport {
    SampledVerdict hypothesis;
    SampledVerdict conclusion;

    /// The hypothesis survived and the conclusion failed.
    bool falsified() const { return hypothesis.holds && !conclusion.holds; }
};

/// Hypothesis: |x| = |y| => |Tx| = |Ty|; conclusion: T preserves orthogonality.
/// Besides y = U x, the hypothesis is tried on (x + y, x - y) and
/// (x + iy, x - iy) for every orthogonal pair used by the conclusion.
ImplicationReport verify_thm43(const MapUnderTest& t, int trials, std::uint64_t seed, const ToleranceConfig& tol = {});

/// Hypothesis: |x| <= |y| => |Tx| <= |Ty|; conclusion: orthogonality
/// preservation. Requires T to be module-linear. Besides x = V y, the
/// hypothesis is tried on (x, x - y <Ty,Tx>/||Ty||^2) for every orthogonal
/// pair (x, y) used by the conclusion.
ImplicationReport verify_thm44(const MapUnderTest& t, int trials, std::uint64_t seed, const ToleranceConfig& tol = {});

struct EquivalenceReport {
    SampledVerdict op;
    SampledVerdict order;

    bool agree() const { return op.holds == order.holds; }
};

/// Over the full algebra, a module-linear T preserves orthogonality iff it
/// preserves the order of moduli. Both sides are evaluated.
EquivalenceReport verify_cor411(const MapUnderTest& t, int trials, std::uint64_t seed, const ToleranceConfig& tol = {});

struct LocalityTheoremReport {
    LocalityReport local;
    SampledVerdict op;
    GammaFit fit;
    bool fit_ok = false;
    SampledVerdict equal_modulus; // |x| = |y| => |Tx| = |Ty|
    SampledVerdict order;         // |x| <= |y| => |Tx| <= |Ty|
    SampledVerdict scaling;       // |Tx| = sqrt(gamma) |x|
    double max_scaling_error = 0.0;

    bool hypotheses_hold() const { return local.local && op.holds; }
    bool conclusions_hold() const { return fit_ok && equal_modulus.holds && order.holds && scaling.holds; }
    bool falsified() const { return hypotheses_hold() && !conclusions_hold(); }
};

/// A local nonzero orthogonality preserving map over the full algebra
/// satisfies <Tx,Ty> = gamma <x,y>. The conclusions are evaluated only when
/// both hypotheses survive; `probes` random x test |Tx| = sqrt(gamma) |x|.
LocalityTheoremReport verify_thm410(const MapUnderTest& t, int trials, std::uint64_t seed, int probes = 100,
                                    const ToleranceConfig& tol = {});

/// On M_2 over M_2, a linear (not necessarily module-linear) T with
/// |A| <= |B| => |TA| <= |TB| preserves orthogonality. The hypothesis is also
/// tried on (A, A + mu B) for orthogonal A, B and critical mu.
ImplicationReport verify_remark45(const MapUnderTest& t, int trials, std::uint64_t seed,
                                  const ToleranceConfig& tol = {});

} // namespace angleguard
