#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include <Eigen/Dense>

#include "angleguard/linalg.hpp"

namespace angleguard {

/// Seedable source used by every generator and suite.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The standard distributions are implementation-defined, so the
/// conversions to doubles and normals are done here: uniform doubles take the
/// top 53 bits, normals use Box-Muller. Each trial gets its own stream seeded
/// with splitmix64(seed, trial), so trials can be evaluated in any order.
class Rng {
public:
    static constexpr std::string_view algorithm = "mt19937_64+splitmix64-stream/u53/box-muller";

    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    static Rng for_trial(std::uint64_t seed, std::uint64_t trial);

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1).
    double uniform();
    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Uniform integer in [lo, hi].
    int uniform_int(int lo, int hi);
    bool coin() { return (next_u64() >> 63) != 0; }
    double normal();
    std::complex<double> complex_normal();

    Eigen::VectorXd normal_vector(Eigen::Index n);
    Eigen::MatrixXd normal_matrix(Eigen::Index rows, Eigen::Index cols);
    ComplexMatrix complex_normal_matrix(Eigen::Index rows, Eigen::Index cols);

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t x);
/// Seed of an independent sub-stream, used when one check runs several samplers.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

} // namespace angleguard
