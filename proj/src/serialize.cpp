#include "angleguard/serialize.hpp"

#include <array>
#include <string>

#include "angleguard/error.hpp"

namespace angleguard::io {

namespace {

constexpr std::array<const char*, 9> kRoman = {"i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix"};

template <typename T>
json optional_json(const std::optional<T>& v) {
    return v ? to_json(*v) : json(nullptr);
}

/// {verdict, witness?}
json condition(bool verdict, const json& witness) {
    json j = {{"verdict", verdict}};
    if (!witness.is_null()) j["witness"] = witness;
    return j;
}

Eigen::Index dimension(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer()) fail(ErrorKind::input, std::string("missing integer field '") + key + "'");
    const auto v = j[key].get<long long>();
    if (v < 1) fail(ErrorKind::input, std::string("field '") + key + "' must be positive");
    return static_cast<Eigen::Index>(v);
}

std::vector<double> numbers(const json& j, const char* key, std::size_t count) {
    if (!j.contains(key) || !j[key].is_array()) fail(ErrorKind::input, std::string("missing array field '") + key + "'");
    const json& a = j[key];
    if (a.size() != count) fail(ErrorKind::input, std::string("field '") + key + "' has the wrong number of entries");
    std::vector<double> out;
    out.reserve(count);
    for (const auto& e : a) {
        if (!e.is_number()) fail(ErrorKind::input, std::string("field '") + key + "' holds a non-number");
        out.push_back(e.get<double>());
    }
    return out;
}

} // namespace

json to_json(const ComplexMatrix& m) {
    json re = json::array();
    json im = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            re.push_back(m(i, j).real());
            im.push_back(m(i, j).imag());
        }
    }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
}

json to_json(const Eigen::MatrixXd& m) { return to_json(ComplexMatrix(m.cast<std::complex<double>>())); }

json to_json(const Eigen::VectorXd& v) { return to_json(Eigen::MatrixXd(v)); }

json to_json(std::complex<double> z) { return {{"re", z.real()}, {"im", z.imag()}}; }

json to_json(const ModuleShape& shape) {
    return {{"m", shape.m}, {"n", shape.n()}, {"kind", std::string(to_string(shape.algebra.kind))}};
}

json to_json(const ModuleElement& x) {
    json j = to_json(x.shape());
    j["matrix"] = to_json(x.matrix());
    return j;
}

json to_json(const MapUnderTest& t) {
    json j = {{"kind", std::string(t.kind_name())}, {"domain", to_json(t.domain())}, {"codomain", to_json(t.codomain())}};
    if (const auto* k = std::get_if<LeftMultiplication>(&t.kind())) j["s"] = to_json(k->s);
    if (const auto* k = std::get_if<GeneralLinear>(&t.kind())) j["matrix"] = to_json(k->matrix);
    if (const auto* k = std::get_if<DiagonalMultiplier>(&t.kind())) j["f0"] = to_json(ComplexMatrix(k->f0));
    if (const auto tag = t.tag()) j["tag"] = std::string(*tag);
    return j;
}

ComplexMatrix complex_matrix_from_json(const json& j) {
    if (!j.is_object()) fail(ErrorKind::input, "a matrix must be a JSON object");
    const Eigen::Index rows = dimension(j, "rows");
    const Eigen::Index cols = dimension(j, "cols");
    const auto count = static_cast<std::size_t>(rows * cols);
    const auto re = numbers(j, "re", count);
    const auto im = numbers(j, "im", count);
    ComplexMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index c = 0; c < cols; ++c) {
            const auto k = static_cast<std::size_t>(i * cols + c);
            m(i, c) = {re[k], im[k]};
        }
    require_finite(m, "matrix");
    return m;
}

Eigen::MatrixXd real_matrix_from_json(const json& j) {
    const ComplexMatrix m = complex_matrix_from_json(j);
    if (!m.imag().isZero(0.0)) fail(ErrorKind::input, "expected a real matrix");
    return m.real();
}

Eigen::VectorXd real_vector_from_json(const json& j) {
    const Eigen::MatrixXd m = real_matrix_from_json(j);
    if (m.cols() != 1) fail(ErrorKind::input, "expected a column vector");
    return m.col(0);
}

ModuleElement module_element_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string() || !j.contains("matrix"))
        fail(ErrorKind::input, "a module element needs m, n, kind and matrix");
    const ModuleShape shape{dimension(j, "m"), AlgebraSpec{dimension(j, "n"), parse_algebra_kind(j["kind"].get<std::string>())}};
    return ModuleElement(shape, complex_matrix_from_json(j["matrix"]));
}

json to_json(const RealWitness& w) { return {{"x", to_json(w.x)}, {"y", to_json(w.y)}}; }

json to_json(const SimilarityVerdict& v) {
    json j = {{"is_similarity", v.is_similarity}, {"residual", v.residual}};
    j["gamma"] = v.gamma ? json(*v.gamma) : json(nullptr);
    return j;
}

json to_json(const SimilarityConditionsReport& r) {
    json conditions = json::object();
    for (std::size_t k = 0; k < r.conditions.size(); ++k) {
        const auto& c = r.conditions[k];
        json j = condition(c.sampled, optional_json(c.witness));
        j["analytic"] = c.analytic;
        conditions[kRoman[k]] = j;
    }
    return {{"conditions", conditions}, {"similarity", to_json(r.similarity)}, {"consistent", r.consistent()}};
}

json to_json(const ThetaPreservingReport& r) {
    return {{"hypothesis_i", condition(r.hypothesis_i, optional_json(r.witness_i))},
            {"hypothesis_ii", condition(r.hypothesis_ii, optional_json(r.witness_ii))},
            {"conclusion", r.conclusion}};
}

json to_json(const InnerProductComparison& c) {
    json j = {{"gamma", c.gamma ? json(*c.gamma) : json(nullptr)}, {"residual", c.residual},
              {"sampled_violations", c.sampled_violations}};
    if (c.witness) {
        j["witness"] = {{"x", to_json(c.witness->x)},         {"y", to_json(c.witness->y)},
                        {"condition", c.witness->condition}, {"form1", c.witness->form1},
                        {"form2", c.witness->form2}};
    }
    return j;
}

json to_json(const EqualNormReport& r) {
    json j = condition(r.holds, optional_json(r.witness));
    j["ratio_spread"] = r.ratio_spread;
    j["is_similarity"] = r.is_similarity;
    return j;
}

json to_json(const OrthogonalityReport& r) {
    json conditions = json::object();
    for (std::size_t k = 0; k < r.conditions.size(); ++k) {
        json w(nullptr);
        if (const auto& o = r.witnesses[k]) {
            w = {{"residual", o->residual}};
            if (o->a) w["a"] = to_json(*o->a);
            if (o->b) w["b"] = to_json(*o->b);
            if (o->lambda) w["lambda"] = to_json(*o->lambda);
        }
        conditions[kRoman[k]] = condition(r.conditions[k], w);
    }
    return {{"conditions", conditions}, {"agree", r.agree()}};
}

json to_json(const OrderConditionsReport& r) {
    json conditions = json::object();
    for (std::size_t k = 0; k < r.no_violation.size(); ++k) {
        json w(nullptr);
        if (const auto& o = r.witnesses[k]) {
            w = {{"violation", o->violation}};
            if (o->a) w["a"] = to_json(*o->a);
            if (o->lambda) w["lambda"] = to_json(*o->lambda);
        }
        json c = condition(r.no_violation[k], w);
        c["max_violation"] = r.max_violation[k];
        conditions[kRoman[k + 5]] = c;
    }
    return {{"conditions", conditions}, {"samples_per_condition", r.samples_per_condition}};
}

json to_json(const LocalityReport& r) {
    json w(nullptr);
    if (r.witness) w = {{"x", to_json(r.witness->x)}, {"a", to_json(r.witness->a)}, {"residual", r.witness->residual}};
    json j = condition(r.local, w);
    j["pairs_checked"] = r.pairs_checked;
    return j;
}

json to_json(const LinearityReport& r) {
    json w(nullptr);
    if (r.witness) w = {{"x", to_json(r.witness->x)}, {"a", to_json(r.witness->a)}, {"residual", r.witness->residual}};
    return condition(r.a_linear, w);
}

json to_json(const PairWitness& w) { return {{"x", to_json(w.x)}, {"y", to_json(w.y)}, {"residual", w.residual}}; }

json to_json(const SampledVerdict& v) {
    json j = condition(v.holds, optional_json(v.witness));
    j["samples"] = v.samples;
    return j;
}

json to_json(const GammaFit& f) {
    return {{"gamma", f.gamma}, {"residual", f.residual}, {"scale", f.scale}, {"samples", f.samples}};
}

json to_json(const ClassificationReport& r) {
    return {{"op", to_json(r.op)},
            {"strongly_op", to_json(r.strongly_op)},
            {"similarity", to_json(r.similarity)},
            {"cond_iv", to_json(r.cond_iv)},
            {"cond_v", to_json(r.cond_v)},
            {"local", r.local},
            {"a_linear", r.a_linear},
            {"gamma_fit", to_json(r.gamma_fit)},
            {"consistent", r.consistent()}};
}

json to_json(const ImplicationReport& r) {
    return {{"hypothesis", to_json(r.hypothesis)}, {"conclusion", to_json(r.conclusion)}, {"falsified", r.falsified()}};
}

json to_json(const EquivalenceReport& r) {
    return {{"op", to_json(r.op)}, {"order", to_json(r.order)}, {"agree", r.agree()}};
}

json to_json(const LocalityTheoremReport& r) {
    json j = {{"local", to_json(r.local)}, {"op", to_json(r.op)}, {"hypotheses_hold", r.hypotheses_hold()}};
    if (r.hypotheses_hold()) {
        j["gamma_fit"] = to_json(r.fit);
        j["fit_ok"] = r.fit_ok;
        j["equal_modulus"] = to_json(r.equal_modulus);
        j["order"] = to_json(r.order);
        j["scaling"] = to_json(r.scaling);
        j["max_scaling_error"] = r.max_scaling_error;
    }
    j["falsified"] = r.falsified();
    return j;
}

} // namespace angleguard::io
