#include "polynorm/lp.hpp"
#include "polynorm/spaces.hpp"

namespace polynorm {

namespace {

struct Extremum {
    Rational value;
    Vec witness;
};

// Opposite vertices and facets give the same values, so only the
// lexicographically positive half is visited.
Extremum max_over_vertices(const LinearMap& t) {
    Extremum best{Rational(0), Vec(t.dom()->dim)};
    bool first = true;
    for (const auto& v : t.dom()->ball.vertices()) {
        if (!lex_positive(v)) continue;
        Rational n = t.cod()->norm(t(v));
        if (first || n > best.value) {
            best = {std::move(n), v};
            first = false;
        }
    }
    return best;
}

// min of ||T x||_cod over the facet {x in ball : g(x) = 1}. The facet is the
// hull of its vertices and the codomain norm is the vertex-LP gauge, so
//   minimize sum(lambda) s.t. T V_g mu - W lambda = 0, sum(mu) = 1, mu, lambda >= 0.
Extremum min_over_facet(const LinearMap& t, const Vec& g) {
    std::vector<Vec> on_facet;
    for (const auto& v : t.dom()->ball.vertices())
        if (dot(g, v) == 1) on_facet.push_back(v);
    const auto& w = t.cod()->ball.vertices();
    const std::size_t m = t.cod()->dim;
    const std::size_t nmu = on_facet.size();

    std::vector<Vec> images;
    images.reserve(nmu);
    for (const auto& v : on_facet) images.push_back(t(v));

    Matrix a(m + 1, nmu + w.size());
    Vec b(m + 1);
    Vec c(nmu + w.size());
    for (std::size_t j = 0; j < nmu; ++j) {
        for (std::size_t i = 0; i < m; ++i) a(i, j) = images[j][i];
        a(m, j) = 1;
    }
    for (std::size_t j = 0; j < w.size(); ++j) {
        for (std::size_t i = 0; i < m; ++i) a(i, nmu + j) = -w[j][i];
        c[nmu + j] = 1;
    }
    b[m] = 1;
    const lp::Solution sol = lp::solve_standard(a, b, c);
    if (sol.status != lp::Status::Optimal)
        throw Error(ErrorKind::LpFailure, "lower isometry LP not optimal");
    Vec x(t.dom()->dim);
    for (std::size_t j = 0; j < nmu; ++j)
        if (sol.values[j] != 0) x = x + sol.values[j] * on_facet[j];
    return {sol.objective, std::move(x)};
}

Extremum min_over_sphere(const LinearMap& t) {
    Extremum best{Rational(0), Vec(t.dom()->dim)};
    bool first = true;
    for (const auto& g : t.dom()->ball.facets()) {
        if (!lex_positive(g)) continue;
        Extremum e = min_over_facet(t, g);
        if (first || e.value < best.value) {
            best = std::move(e);
            first = false;
        }
        if (best.value == 0) break;
    }
    return best;
}

}  // namespace

Rational operator_norm(const LinearMap& t) { return max_over_vertices(t).value; }

Rational lower_isometry_constant(const LinearMap& t) {
    if (t.dom()->dim == 0) return 0;
    return min_over_sphere(t).value;
}

IsometryCertificate certify(const LinearMap& t) {
    IsometryCertificate cert;
    if (t.dom()->dim == 0) {
        cert.empty_domain = true;
        return cert;
    }
    Extremum up = max_over_vertices(t);
    Extremum low = min_over_sphere(t);
    cert.upper = std::move(up.value);
    cert.upper_witness = std::move(up.witness);
    cert.lower = std::move(low.value);
    cert.lower_witness = std::move(low.witness);
    return cert;
}

}  // namespace polynorm
