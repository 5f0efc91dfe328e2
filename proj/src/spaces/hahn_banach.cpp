#include "polynorm/linalg.hpp"
#include "polynorm/lp.hpp"
#include "polynorm/spaces.hpp"

namespace polynorm {

using Terms = std::vector<std::pair<std::size_t, Rational>>;

Rational dual_norm(const NormedSpace& x, const Vec& g) {
    Rational best = 0;
    for (const auto& v : x.ball.vertices()) {
        Rational s = abs(dot(g, v));
        if (s > best) best = std::move(s);
    }
    return best;
}

Rational restricted_dual_norm(const NormedSpace& x, const std::vector<Vec>& basis, const Vec& values) {
    if (values.size() != basis.size()) throw Error(ErrorKind::ShapeMismatch, "functional values");
    if (basis.empty()) return 0;
    // maximize values.z s.t. sum z_j s_j = W lambda, sum(lambda) <= 1
    lp::LinearProgram prog;
    const auto& w = x.ball.vertices();
    const std::size_t z0 = prog.add_variables(basis.size(), true);
    const std::size_t lam = prog.add_variables(w.size());
    for (std::size_t i = 0; i < x.dim; ++i) {
        Terms terms;
        for (std::size_t j = 0; j < basis.size(); ++j)
            if (basis[j][i] != 0) terms.emplace_back(z0 + j, basis[j][i]);
        for (std::size_t j = 0; j < w.size(); ++j)
            if (w[j][i] != 0) terms.emplace_back(lam + j, -w[j][i]);
        prog.add_constraint(std::move(terms), lp::Sense::Equal, 0);
    }
    Terms total;
    for (std::size_t j = 0; j < w.size(); ++j) total.emplace_back(lam + j, Rational(1));
    prog.add_constraint(std::move(total), lp::Sense::LessEqual, 1);
    Terms obj;
    for (std::size_t j = 0; j < basis.size(); ++j) obj.emplace_back(z0 + j, values[j]);
    prog.maximize(std::move(obj));
    const lp::Solution sol = prog.solve();
    if (sol.status != lp::Status::Optimal)
        throw Error(ErrorKind::LpFailure, "restricted dual norm LP not optimal");
    return sol.objective;
}

Vec hahn_banach_extend(const NormedSpace& x, const std::vector<Vec>& basis, const Vec& values) {
    if (values.size() != basis.size()) throw Error(ErrorKind::ShapeMismatch, "functional values");
    if (rank(basis, x.dim) != basis.size())
        throw Error(ErrorKind::DependentKernel, "subspace basis is linearly dependent");
    const Rational target = restricted_dual_norm(x, basis, values);

    // Feasible set of optimal extensions: g(s_j) = values_j and |g(v)| <= target
    // on the ball's vertices. Its lexicographic minimum is found coordinate by
    // coordinate, fixing each minimum before moving on.
    lp::LinearProgram prog;
    const std::size_t g0 = prog.add_variables(x.dim, true);
    auto functional_terms = [&](const Vec& v) {
        Terms t;
        for (std::size_t i = 0; i < x.dim; ++i)
            if (v[i] != 0) t.emplace_back(g0 + i, v[i]);
        return t;
    };
    for (std::size_t j = 0; j < basis.size(); ++j)
        prog.add_constraint(functional_terms(basis[j]), lp::Sense::Equal, values[j]);
    for (const auto& v : x.ball.vertices()) {
        if (!lex_positive(v)) continue;
        prog.add_constraint(functional_terms(v), lp::Sense::LessEqual, target);
        prog.add_constraint(functional_terms(v), lp::Sense::GreaterEqual, -target);
    }
    Vec g(x.dim);
    for (std::size_t i = 0; i < x.dim; ++i) {
        prog.minimize({{g0 + i, Rational(1)}});
        const lp::Solution sol = prog.solve();
        if (sol.status != lp::Status::Optimal)
            throw Error(ErrorKind::LpFailure, "Hahn-Banach extension LP infeasible");
        g[i] = sol.values[g0 + i];
        prog.add_constraint({{g0 + i, Rational(1)}}, lp::Sense::Equal, g[i]);
    }

    for (std::size_t j = 0; j < basis.size(); ++j)
        if (dot(g, basis[j]) != values[j])
            throw Error(ErrorKind::VerificationFailed, "extension does not restrict to the functional");
    if (dual_norm(x, g) != target)
        throw Error(ErrorKind::VerificationFailed, "extension changed the dual norm");
    return g;
}

LinearMap extend_operator_linf(const LinearMap& t, const LinearMap& inclusion) {
    const std::size_t m = t.cod()->dim;
    if (!(t.cod()->ball == Polytope::linf_ball(m)))
        throw Error(ErrorKind::Precondition, "codomain is not a sup-norm space");
    if (!same_space(*t.dom(), *inclusion.dom()))
        throw Error(ErrorKind::DomainMismatch, "operator and inclusion have different domains");
    const auto& x = *inclusion.cod();
    std::vector<Vec> basis;
    for (std::size_t j = 0; j < inclusion.matrix().cols(); ++j)
        basis.push_back(inclusion.matrix().column(j));
    std::vector<Vec> rows;
    rows.reserve(m);
    for (std::size_t i = 0; i < m; ++i) rows.push_back(hahn_banach_extend(x, basis, t.matrix().row(i)));
    LinearMap ext(Matrix::from_rows(x.dim, rows), inclusion.cod(), t.cod());
    if (compose(ext, inclusion).matrix() != t.matrix())
        throw Error(ErrorKind::VerificationFailed, "extension does not restrict to the operator");
    if (operator_norm(ext) != operator_norm(t))
        throw Error(ErrorKind::VerificationFailed, "extension changed the operator norm");
    return ext;
}

}  // namespace polynorm
