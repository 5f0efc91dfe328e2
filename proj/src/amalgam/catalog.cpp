#include <algorithm>
#include <set>

#include "polynorm/amalgam.hpp"
#include "polynorm/linalg.hpp"

namespace polynorm {

namespace {

std::vector<Vec> lex_positive_lattice(std::size_t n, long grid) {
    std::vector<Vec> pts;
    Vec x(n, Rational(-grid));
    for (;;) {
        if (lex_positive(x)) pts.push_back(x);
        std::size_t i = n;
        while (i > 0 && x[i - 1] == grid) x[--i] = -grid;
        if (i == 0) break;
        x[i - 1] += 1;
    }
    return pts;
}

std::vector<Polytope> lattice_polytopes(std::size_t n, long grid, std::size_t budget) {
    const std::vector<Vec> pts = lex_positive_lattice(n, grid);
    if (pts.size() > 16)
        throw Error(ErrorKind::BudgetExceeded,
                    "catalog: " + std::to_string(pts.size()) + " lattice directions in dimension " +
                        std::to_string(n));
    auto by_vertices = [](const Polytope& a, const Polytope& b) {
        return std::lexicographical_compare(
            a.vertices().begin(), a.vertices().end(), b.vertices().begin(), b.vertices().end(),
            [](const Vec& x, const Vec& y) { return lex_compare(x, y) < 0; });
    };
    std::set<Polytope, decltype(by_vertices)> seen(by_vertices);
    for (unsigned long mask = 1; mask < (1UL << pts.size()); ++mask) {
        std::vector<Vec> chosen;
        for (std::size_t k = 0; k < pts.size(); ++k)
            if (mask & (1UL << k)) chosen.push_back(pts[k]);
        if (chosen.size() < n || rank(chosen, n) < n) continue;
        std::vector<Vec> sym;
        for (const auto& p : chosen) {
            sym.push_back(p);
            sym.push_back(-p);
        }
        seen.insert(Polytope::from_vertices(n, std::move(sym), budget));
    }
    std::vector<Polytope> out(seen.begin(), seen.end());
    std::stable_sort(out.begin(), out.end(), [](const Polytope& a, const Polytope& b) {
        return a.vertices().size() < b.vertices().size();
    });
    return out;
}

std::string space_label(const Polytope& p, std::size_t n, std::size_t k) {
    if (n == 1) return "R";
    if (p == Polytope::l1_ball(n)) return "l1_" + std::to_string(n);
    if (p == Polytope::linf_ball(n)) return "linf" + std::to_string(n);
    return "P" + std::to_string(n) + "." + std::to_string(k);
}

// Every vertex of the domain ball must land on the unit sphere of the
// codomain; this discards most candidates before any LP is solved.
bool vertices_to_sphere(const Matrix& m, const NormedSpace& dom, const NormedSpace& cod) {
    for (const auto& v : dom.ball.vertices())
        if (lex_positive(v) && cod.norm(m * v) != 1) return false;
    return true;
}

}  // namespace

Catalog build_catalog(std::size_t max_dim, long grid, std::size_t budget, std::size_t max_candidates) {
    check_budget(max_dim, budget, "build_catalog");
    if (max_dim == 0 || grid < 1) throw Error(ErrorKind::Precondition, "catalog needs max_dim >= 1 and grid >= 1");
    Catalog cat;
    cat.max_dim = max_dim;
    cat.grid = grid;
    for (std::size_t n = 1; n <= max_dim; ++n) {
        std::size_t k = 0;
        for (auto& p : lattice_polytopes(n, grid, budget)) {
            std::string label = space_label(p, n, k++);
            cat.spaces.push_back(make_space(std::move(label), std::move(p)));
        }
    }

    std::vector<Rational> values;
    for (long k = -2 * grid; k <= 2 * grid; ++k) values.emplace_back(k, 2);

    std::size_t candidates = 0;
    for (std::size_t d = 0; d < cat.spaces.size(); ++d) {
        for (std::size_t c = 0; c < cat.spaces.size(); ++c) {
            const auto& dom = cat.spaces[d];
            const auto& cod = cat.spaces[c];
            if (dom->dim > cod->dim) continue;
            const std::size_t entries = dom->dim * cod->dim;
            std::size_t count = 1;
            for (std::size_t e = 0; e < entries; ++e) count *= values.size();
            candidates += count;
            if (candidates > max_candidates)
                throw Error(ErrorKind::BudgetExceeded, "catalog: more than " +
                                                           std::to_string(max_candidates) +
                                                           " embedding candidates");
            std::vector<std::size_t> idx(entries, 0);
            for (;;) {
                Matrix m(cod->dim, dom->dim);
                for (std::size_t e = 0; e < entries; ++e) m(e / dom->dim, e % dom->dim) = values[idx[e]];
                if (rank(m) == dom->dim && vertices_to_sphere(m, *dom, *cod)) {
                    LinearMap map(std::move(m), dom, cod);
                    if (certify(map).isometric()) cat.embeddings.push_back({d, c, std::move(map)});
                }
                std::size_t e = entries;
                while (e > 0 && idx[e - 1] + 1 == values.size()) idx[--e] = 0;
                if (e == 0) break;
                ++idx[e - 1];
            }
        }
    }
    return cat;
}

}  // namespace polynorm
