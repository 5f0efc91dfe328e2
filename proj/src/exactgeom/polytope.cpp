#include "polynorm/polytope.hpp"

#include <algorithm>

#include "polynorm/linalg.hpp"
#include "polynorm/lp.hpp"

namespace polynorm {

namespace {

bool contains_sorted(const std::vector<Vec>& sorted_desc, const Vec& v) {
    return std::binary_search(sorted_desc.begin(), sorted_desc.end(), v,
                              [](const Vec& a, const Vec& b) { return lex_compare(a, b) > 0; });
}

void require_symmetric(const std::vector<Vec>& sorted, const char* what) {
    for (const auto& v : sorted)
        if (!contains_sorted(sorted, -v))
            throw Error(ErrorKind::NotSymmetric,
                        std::string(what) + " " + to_string(v) + " has no antipode");
}

void check_lengths(std::size_t dim, const std::vector<Vec>& pts) {
    for (const auto& p : pts)
        if (p.size() != dim)
            throw Error(ErrorKind::ShapeMismatch, "point " + to_string(p) + " is not of dimension " +
                                                      std::to_string(dim));
}

// Keeps the members of `candidates` at which the tight members of `dual`
// (those with value 1) have full rank: the extreme points / facets.
std::vector<Vec> tight_full_rank(std::size_t dim, const std::vector<Vec>& candidates,
                                 const std::vector<Vec>& dual) {
    std::vector<Vec> out;
    for (const auto& c : candidates) {
        std::vector<Vec> tight;
        for (const auto& d : dual)
            if (dot(c, d) == 1) tight.push_back(d);
        if (tight.size() >= dim && rank(tight, dim) == dim) out.push_back(c);
    }
    return out;
}

}  // namespace

void canonicalize(std::vector<Vec>& points) {
    std::sort(points.begin(), points.end(),
              [](const Vec& a, const Vec& b) { return lex_compare(a, b) > 0; });
    points.erase(std::unique(points.begin(), points.end()), points.end());
}

Polytope::Polytope(std::size_t dim, std::vector<Vec> vertices, std::vector<Vec> facets)
    : dim_(dim), vertices_(std::move(vertices)), facets_(std::move(facets)) {}

Polytope Polytope::from_vertices(std::size_t dim, std::vector<Vec> points, std::size_t budget) {
    return dd_convert({dim, std::move(points), std::nullopt}, budget);
}

Polytope Polytope::from_facets(std::size_t dim, std::vector<Vec> functionals, std::size_t budget) {
    return dd_convert({dim, std::nullopt, std::move(functionals)}, budget);
}

Polytope Polytope::l1_ball(std::size_t dim) {
    std::vector<Vec> verts;
    for (std::size_t i = 0; i < dim; ++i) {
        verts.push_back(unit_vec(dim, i));
        verts.push_back(-unit_vec(dim, i));
    }
    std::vector<Vec> facets;
    const std::size_t count = std::size_t{1} << dim;
    for (std::size_t mask = 0; mask < count; ++mask) {
        Vec f(dim);
        for (std::size_t i = 0; i < dim; ++i) f[i] = (mask >> i) & 1 ? -1 : 1;
        facets.push_back(std::move(f));
    }
    canonicalize(verts);
    canonicalize(facets);
    return Polytope(dim, std::move(verts), std::move(facets));
}

Polytope Polytope::linf_ball(std::size_t dim) {
    Polytope p = l1_ball(dim);
    std::swap(p.vertices_, p.facets_);
    return p;
}

Polytope dd_convert(const PolytopeData& data, std::size_t budget) {
    const std::size_t dim = data.dim;
    check_budget(dim, budget, "dd_convert");
    if (!data.vertices && !data.facets)
        throw Error(ErrorKind::Precondition, "polytope has neither vertices nor facets");
    if (dim == 0) return Polytope();

    auto prepare = [&](std::vector<Vec> pts, const char* what) {
        check_lengths(dim, pts);
        std::erase_if(pts, [](const Vec& v) { return is_zero(v); });
        canonicalize(pts);
        require_symmetric(pts, what);
        if (rank(pts, dim) < dim)
            throw Error(ErrorKind::NotFullDimensional,
                        std::string(what) + "s span fewer than " + std::to_string(dim) + " dimensions");
        return pts;
    };

    std::optional<Polytope> from_v;
    if (data.vertices) {
        std::vector<Vec> pts = prepare(*data.vertices, "vertex");
        std::vector<Vec> facets = polar_vertices(dim, pts);
        std::vector<Vec> verts = tight_full_rank(dim, pts, facets);
        from_v = Polytope(dim, std::move(verts), std::move(facets));
    }
    std::optional<Polytope> from_h;
    if (data.facets) {
        std::vector<Vec> fs = prepare(*data.facets, "facet");
        std::vector<Vec> verts = polar_vertices(dim, fs);
        std::vector<Vec> facets = tight_full_rank(dim, fs, verts);
        from_h = Polytope(dim, std::move(verts), std::move(facets));
    }
    if (from_v && from_h && (from_v->vertices() != from_h->vertices() ||
                             from_v->facets() != from_h->facets()))
        throw Error(ErrorKind::InconsistentRepresentations,
                    "vertex and facet lists describe different bodies");
    return from_v ? *from_v : *from_h;
}

Polytope project_polytope(const Polytope& p, const Matrix& q, std::size_t budget) {
    if (q.cols() != p.dim()) throw Error(ErrorKind::ShapeMismatch, "projection source dimension");
    if (rank(q) < q.rows())
        throw Error(ErrorKind::NotSurjective, "projection of rank " + std::to_string(rank(q)) +
                                                  " onto dimension " + std::to_string(q.rows()));
    std::vector<Vec> images;
    images.reserve(p.vertices().size());
    for (const auto& v : p.vertices()) images.push_back(q * v);
    return Polytope::from_vertices(q.rows(), std::move(images), budget);
}

std::vector<Vec> l1_join_vertices(const Polytope& p, const Polytope& q) {
    const std::size_t n = p.dim() + q.dim();
    std::vector<Vec> verts;
    verts.reserve(p.vertices().size() + q.vertices().size());
    for (const auto& v : p.vertices()) {
        Vec x(n);
        std::copy(v.begin(), v.end(), x.begin());
        verts.push_back(std::move(x));
    }
    for (const auto& w : q.vertices()) {
        Vec x(n);
        std::copy(w.begin(), w.end(), x.begin() + static_cast<std::ptrdiff_t>(p.dim()));
        verts.push_back(std::move(x));
    }
    canonicalize(verts);
    return verts;
}

Polytope l1_join(const Polytope& p, const Polytope& q, std::size_t budget) {
    const std::size_t n = p.dim() + q.dim();
    check_budget(n, budget, "l1_join");
    if (p.dim() == 0) return q;
    if (q.dim() == 0) return p;
    // Facets of an l1-sum are exactly the concatenations (f, g) of facets.
    std::vector<Vec> facets;
    facets.reserve(p.facets().size() * q.facets().size());
    for (const auto& f : p.facets())
        for (const auto& g : q.facets()) {
            Vec h(f);
            h.insert(h.end(), g.begin(), g.end());
            facets.push_back(std::move(h));
        }
    canonicalize(facets);
    return Polytope(n, l1_join_vertices(p, q), std::move(facets));
}

Rational gauge(const Polytope& p, const Vec& x) {
    if (x.size() != p.dim()) throw Error(ErrorKind::ShapeMismatch, "gauge argument dimension");
    Rational best = 0;
    for (const auto& f : p.facets()) {
        Rational v = dot(f, x);
        if (v > best) best = std::move(v);
    }
    return best;
}

Rational gauge_lp(const Polytope& p, const Vec& x) {
    if (x.size() != p.dim()) throw Error(ErrorKind::ShapeMismatch, "gauge argument dimension");
    if (is_zero(x)) return 0;
    const auto& verts = p.vertices();
    Matrix a(p.dim(), verts.size());
    for (std::size_t j = 0; j < verts.size(); ++j)
        for (std::size_t i = 0; i < p.dim(); ++i) a(i, j) = verts[j][i];
    const lp::Solution sol = lp::solve_standard(a, x, Vec(verts.size(), Rational(1)));
    if (sol.status != lp::Status::Optimal)
        throw Error(ErrorKind::LpFailure, "vertex gauge LP not optimal");
    return sol.objective;
}

Rational membership_gauge(const Polytope& p, const Vec& x) {
    Rational h = gauge(p, x);
    if (h != gauge_lp(p, x))
        throw Error(ErrorKind::VerificationFailed, "facet and vertex gauges disagree at " + to_string(x));
    return h;
}

}  // namespace polynorm
