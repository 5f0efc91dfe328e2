#include <utility>

#include "polynorm/linalg.hpp"
#include "polynorm/spaces.hpp"

namespace polynorm {

SpacePtr make_space(std::string label, std::size_t dim, std::vector<Vec> vertices,
                    std::size_t budget) {
    if (vertices.empty() && dim > 0) throw Error(ErrorKind::Precondition, "empty vertex list");
    return make_space(std::move(label), Polytope::from_vertices(dim, std::move(vertices), budget));
}

SpacePtr make_space(std::string label, Polytope ball) {
    const std::size_t dim = ball.dim();
    return std::make_shared<const NormedSpace>(NormedSpace{dim, std::move(ball), std::move(label)});
}

SpacePtr zero_space() { return make_space("zero", Polytope()); }

SpacePtr linf_space(std::size_t m, std::size_t budget) {
    check_budget(m, budget, "linf_space");
    return make_space("linf" + std::to_string(m), Polytope::linf_ball(m));
}

SpacePtr l1_space(std::size_t m, std::size_t budget) {
    check_budget(m, budget, "l1_space");
    return make_space("l1_" + std::to_string(m), Polytope::l1_ball(m));
}

bool same_space(const NormedSpace& a, const NormedSpace& b) {
    return &a == &b || (a.dim == b.dim && a.ball == b.ball);
}

LinearMap::LinearMap(Matrix matrix, SpacePtr dom, SpacePtr cod)
    : matrix_(std::move(matrix)), dom_(std::move(dom)), cod_(std::move(cod)) {
    if (!dom_ || !cod_) throw Error(ErrorKind::Precondition, "linear map without spaces");
    if (matrix_.rows() != cod_->dim || matrix_.cols() != dom_->dim)
        throw Error(ErrorKind::ShapeMismatch,
                    "matrix " + std::to_string(matrix_.rows()) + "x" + std::to_string(matrix_.cols()) +
                        " does not map dimension " + std::to_string(dom_->dim) + " to " +
                        std::to_string(cod_->dim));
}

LinearMap LinearMap::identity(SpacePtr space) {
    const std::size_t n = space->dim;
    return LinearMap(Matrix::identity(n), space, space);
}

LinearMap LinearMap::zero(SpacePtr dom, SpacePtr cod) {
    const std::size_t r = cod->dim, c = dom->dim;
    return LinearMap(Matrix(r, c), std::move(dom), std::move(cod));
}

LinearMap compose(const LinearMap& outer, const LinearMap& inner) {
    if (!same_space(*inner.cod(), *outer.dom()))
        throw Error(ErrorKind::DomainMismatch, "cannot compose: codomain '" + inner.cod()->label +
                                                   "' is not domain '" + outer.dom()->label + "'");
    return LinearMap(outer.matrix() * inner.matrix(), inner.dom(), outer.cod());
}

LinearMap difference(const LinearMap& a, const LinearMap& b) {
    if (!same_space(*a.dom(), *b.dom()) || !same_space(*a.cod(), *b.cod()))
        throw Error(ErrorKind::DomainMismatch, "difference of maps between different spaces");
    return LinearMap(a.matrix() - b.matrix(), a.dom(), a.cod());
}

LinearMap scaled(const Rational& s, const LinearMap& a) {
    return LinearMap(s * a.matrix(), a.dom(), a.cod());
}

L1Sum l1_sum(const SpacePtr& a, const SpacePtr& b, std::size_t budget) {
    const std::size_t n = a->dim + b->dim;
    auto sum = make_space("(" + a->label + "+1" + b->label + ")", l1_join(a->ball, b->ball, budget));
    Matrix ia(n, a->dim), ib(n, b->dim);
    for (std::size_t i = 0; i < a->dim; ++i) ia(i, i) = 1;
    for (std::size_t i = 0; i < b->dim; ++i) ib(a->dim + i, i) = 1;
    return {sum, LinearMap(std::move(ia), a, sum), LinearMap(std::move(ib), b, sum)};
}

Subspace subspace(const SpacePtr& x, const std::vector<Vec>& basis, std::string label,
                  std::size_t budget) {
    const std::size_t k = basis.size();
    if (rank(basis, x->dim) != k)
        throw Error(ErrorKind::DependentKernel, "subspace basis is linearly dependent");
    const Matrix b = Matrix::from_columns(x->dim, basis);
    if (label.empty()) label = x->label + "|sub" + std::to_string(k);
    if (k == 0) return {make_space(std::move(label), Polytope()), LinearMap(b, zero_space(), x)};
    // Restricted ball {z : f(Bz) <= 1}; pulled-back functionals are B^T f.
    const Matrix bt = b.transpose();
    std::vector<Vec> pulled;
    pulled.reserve(x->ball.facets().size());
    for (const auto& f : x->ball.facets()) pulled.push_back(bt * f);
    auto space = make_space(std::move(label), Polytope::from_facets(k, std::move(pulled), budget));
    return {space, LinearMap(b, space, x)};
}

LinfEmbedding linf_embed(const SpacePtr& a, std::size_t budget) {
    std::vector<Vec> reps;
    for (const auto& f : a->ball.facets())
        if (lex_positive(f)) reps.push_back(f);
    const std::size_t m = reps.size();
    auto cod = linf_space(m, budget);
    return {m, LinearMap(Matrix::from_rows(a->dim, reps), a, cod)};
}

}  // namespace polynorm
