#pragma once

// Random instance generators. Every generator draws only from the Rng it is
// given, so a (seed, trial) pair reproduces the instance exactly.

#include <Eigen/Dense>

#include "angleguard/module.hpp"
#include "angleguard/random.hpp"
#include "angleguard/real_angle.hpp"

namespace angleguard::gen {

// Real inner product spaces

RealVector unit_vector(Rng& rng, Eigen::Index n);
/// <x, y> = 0 exactly up to one Gram-Schmidt step, random lengths.
RealWitness orthogonal_pair(Rng& rng, Eigen::Index n);
/// |x| = |y| with independent random directions.
RealWitness equal_norm_pair(Rng& rng, Eigen::Index n);
/// angle(x, y) = theta by construction inside a random 2-plane.
RealWitness angle_theta_pair(Rng& rng, Eigen::Index n, double theta, bool equal_norm);

/// gamma Q with Q having orthonormal columns (QR of a Gaussian matrix).
RealLinearMap similarity_map(Rng& rng, Eigen::Index in_dim, Eigen::Index out_dim, double gamma);
/// U diag(sigma) V^T with sigma_max - sigma_min >= min_spread.
RealLinearMap spread_map(Rng& rng, Eigen::Index in_dim, Eigen::Index out_dim, double min_spread);
RealLinearMap random_linear_map(Rng& rng, Eigen::Index in_dim, Eigen::Index out_dim);
/// Symmetric positive definite with eigenvalues bounded away from zero.
Eigen::MatrixXd random_spd(Rng& rng, Eigen::Index n);

// Matrices

ComplexMatrix random_unitary(Rng& rng, Eigen::Index n);
/// p x m with orthonormal columns, p >= m.
ComplexMatrix random_isometry(Rng& rng, Eigen::Index p, Eigen::Index m);
/// Gaussian matrix scaled by 1/sigma_max, so its norm is exactly 1 up to rounding.
ComplexMatrix random_contraction(Rng& rng, Eigen::Index n);
ComplexMatrix random_projection(Rng& rng, Eigen::Index n, Eigen::Index rank);
/// Positive semidefinite M* M with M square Gaussian.
Hermitian random_psd(Rng& rng, Eigen::Index n);

// Modules

ModuleElement random_element(Rng& rng, const ModuleShape& shape);
ComplexMatrix random_algebra_element(Rng& rng, const AlgebraSpec& algebra);

struct ModulePair {
    ModuleElement x;
    ModuleElement y;
};

/// Disjoint row supports (disjoint index supports on the diagonal module),
/// so x* y = 0 holds exactly in floating point.
ModulePair orthogonal_module_pair(Rng& rng, const ModuleShape& shape);
/// y = U x with U unitary (a diagonal phase on the diagonal module): |x| = |y|.
ModulePair equal_modulus_pair(Rng& rng, const ModuleShape& shape);
/// x = V y with |V| <= 1, hence x* x = y* V* V y <= y* y and |x| <= |y|.
ModulePair ordered_module_pair(Rng& rng, const ModuleShape& shape);

struct GeneratedMap {
    MapUnderTest map;
    double gamma = 1.0; // S* S = gamma I for op_a_linear_map, otherwise unused
};

/// x -> S x with S* S = gamma I, gamma uniform in [0.5, 4].
GeneratedMap op_a_linear_map(Rng& rng, const ModuleShape& shape, Eigen::Index p);
/// x -> S x with Gaussian S; S* S has distinct eigenvalues almost surely.
MapUnderTest generic_left_mult(Rng& rng, const ModuleShape& shape, Eigen::Index p);
MapUnderTest random_general_linear(Rng& rng, const ModuleShape& shape, Eigen::Index p);
/// The same map as left multiplication by S, written as I_n (x) S on vec(x).
MapUnderTest left_mult_as_general_linear(const ModuleShape& shape, const ComplexMatrix& s);

} // namespace angleguard::gen
