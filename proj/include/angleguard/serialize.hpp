#pragma once

// JSON encoding. Matrices are {rows, cols, re, im} with entries in row-major
// order; real vectors and maps use the same scheme with im all zero and
// vectors as one column. Module elements are {m, n, kind, matrix}.

#include <json.hpp>

#include "angleguard/cstar_module.hpp"
#include "angleguard/map_classifier.hpp"
#include "angleguard/module.hpp"
#include "angleguard/real_angle.hpp"

namespace angleguard::io {

using json = nlohmann::ordered_json;

json to_json(const ComplexMatrix& m);
json to_json(const Eigen::MatrixXd& m);
json to_json(const Eigen::VectorXd& v);
json to_json(const ModuleElement& x);
json to_json(const ModuleShape& shape);
json to_json(const MapUnderTest& t);
json to_json(std::complex<double> z);

ComplexMatrix complex_matrix_from_json(const json& j);
/// Rejects nonzero imaginary parts.
Eigen::MatrixXd real_matrix_from_json(const json& j);
Eigen::VectorXd real_vector_from_json(const json& j);
ModuleElement module_element_from_json(const json& j);

json to_json(const RealWitness& w);
json to_json(const SimilarityVerdict& v);
json to_json(const SimilarityConditionsReport& r);
json to_json(const ThetaPreservingReport& r);
json to_json(const InnerProductComparison& c);
json to_json(const EqualNormReport& r);

json to_json(const OrthogonalityReport& r);
json to_json(const OrderConditionsReport& r);
json to_json(const LocalityReport& r);
json to_json(const LinearityReport& r);

json to_json(const PairWitness& w);
json to_json(const SampledVerdict& v);
json to_json(const GammaFit& f);
json to_json(const ClassificationReport& r);
json to_json(const ImplicationReport& r);
json to_json(const EquivalenceReport& r);
json to_json(const LocalityTheoremReport& r);

} // namespace angleguard::io
