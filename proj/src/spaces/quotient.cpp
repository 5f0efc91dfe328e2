#include "polynorm/linalg.hpp"
#include "polynorm/lp.hpp"
#include "polynorm/spaces.hpp"

namespace polynorm {

QuotientCoordinates quotient_coordinates(std::size_t n, const std::vector<Vec>& kernel_basis) {
    const std::size_t k = kernel_basis.size();
    if (k > 0 && rank(kernel_basis, n) != k)
        throw Error(ErrorKind::DependentKernel, "kernel basis is linearly dependent");
    std::vector<bool> is_pivot(n, false);
    RowEchelon e;
    if (k > 0) {
        e = rref(Matrix::from_rows(n, kernel_basis));
        for (auto p : e.pivots) is_pivot[p] = true;
    }
    QuotientCoordinates qc;
    for (std::size_t j = 0; j < n; ++j)
        if (!is_pivot[j]) qc.complement.push_back(j);
    const std::size_t d = qc.complement.size();
    qc.q = Matrix(d, n);
    qc.section = Matrix(n, d);
    // x = sum_i x[p_i] R_i + y with y supported on the complement.
    for (std::size_t r = 0; r < d; ++r) {
        const std::size_t c = qc.complement[r];
        qc.q(r, c) = 1;
        for (std::size_t i = 0; i < e.pivots.size(); ++i) qc.q(r, e.pivots[i]) -= e.reduced(i, c);
        qc.section(c, r) = 1;
    }
    return qc;
}

Quotient quotient(const SpacePtr& x, const std::vector<Vec>& kernel_basis, std::size_t budget) {
    QuotientCoordinates qc = quotient_coordinates(x->dim, kernel_basis);
    Polytope ball = qc.q.rows() == 0 ? Polytope() : project_polytope(x->ball, qc.q, budget);
    auto space = make_space(x->label + "/K" + std::to_string(kernel_basis.size()), std::move(ball));
    return {space, LinearMap(std::move(qc.q), x, space), std::move(qc.section),
            std::move(qc.complement)};
}

Rational quotient_norm_lp(const NormedSpace& x, const std::vector<Vec>& kernel_basis, const Vec& v) {
    // minimize sum(lambda) s.t. W lambda - K c = v, lambda >= 0, c free
    lp::LinearProgram prog;
    const auto& w = x.ball.vertices();
    const std::size_t lam = prog.add_variables(w.size());
    const std::size_t c0 = prog.add_variables(kernel_basis.size(), true);
    for (std::size_t i = 0; i < x.dim; ++i) {
        std::vector<std::pair<std::size_t, Rational>> terms;
        for (std::size_t j = 0; j < w.size(); ++j)
            if (w[j][i] != 0) terms.emplace_back(lam + j, w[j][i]);
        for (std::size_t j = 0; j < kernel_basis.size(); ++j)
            if (kernel_basis[j][i] != 0) terms.emplace_back(c0 + j, -kernel_basis[j][i]);
        prog.add_constraint(std::move(terms), lp::Sense::Equal, v[i]);
    }
    std::vector<std::pair<std::size_t, Rational>> obj;
    for (std::size_t j = 0; j < w.size(); ++j) obj.emplace_back(lam + j, Rational(1));
    prog.minimize(std::move(obj));
    const lp::Solution sol = prog.solve();
    if (sol.status != lp::Status::Optimal)
        throw Error(ErrorKind::LpFailure, "quotient norm LP not optimal");
    return sol.objective;
}

}  // namespace polynorm
