#include <bit>
#include <cstdint>

#include "polynorm/linalg.hpp"
#include "polynorm/polytope.hpp"

namespace polynorm {

namespace {

using Bits = std::vector<std::uint64_t>;

struct Ray {
    Vec v;
    Bits zero;  // processed constraints tight at this ray
};

std::size_t popcount(const Bits& b) {
    std::size_t c = 0;
    for (auto w : b) c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

bool subset(const Bits& a, const Bits& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] & ~b[i]) return false;
    return true;
}

Bits intersect(const Bits& a, const Bits& b) {
    Bits c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] & b[i];
    return c;
}

void set_bit(Bits& b, std::size_t i) { b[i / 64] |= std::uint64_t{1} << (i % 64); }

// Extreme rays of the pointed cone {y : a_i . y <= 0}, where the rows span
// the whole space. Incremental double description with the combinatorial
// adjacency test.
std::vector<Vec> extreme_rays(const std::vector<Vec>& rows, std::size_t d) {
    const std::size_t words = (rows.size() + 63) / 64;
    const std::vector<std::size_t> init = independent_subset(rows, d);
    if (init.size() < d) throw Error(ErrorKind::NotFullDimensional, "constraint rows do not span");

    std::vector<Vec> basis_rows;
    for (auto i : init) basis_rows.push_back(rows[i]);
    const auto inv = inverse(Matrix::from_rows(d, basis_rows));
    std::vector<Ray> rays;
    for (std::size_t j = 0; j < d; ++j) {
        Ray r{primitive(-inv->column(j)), Bits(words)};
        for (std::size_t k = 0; k < d; ++k)
            if (k != j) set_bit(r.zero, init[k]);
        rays.push_back(std::move(r));
    }

    std::vector<bool> used(rows.size(), false);
    for (auto i : init) used[i] = true;

    for (std::size_t row = 0; row < rows.size(); ++row) {
        if (used[row] || is_zero(rows[row])) continue;
        const Vec& a = rows[row];
        std::vector<Rational> s(rays.size());
        std::vector<std::size_t> pos, neg;
        for (std::size_t k = 0; k < rays.size(); ++k) {
            s[k] = dot(a, rays[k].v);
            if (s[k] > 0) pos.push_back(k);
            else if (s[k] < 0) neg.push_back(k);
        }
        if (pos.empty()) {
            for (std::size_t k = 0; k < rays.size(); ++k)
                if (s[k] == 0) set_bit(rays[k].zero, row);
            continue;
        }
        std::vector<Ray> next;
        next.reserve(rays.size());
        for (std::size_t pi : pos) {
            for (std::size_t ni : neg) {
                Bits common = intersect(rays[pi].zero, rays[ni].zero);
                if (popcount(common) + 2 < d) continue;
                bool adjacent = true;
                for (std::size_t k = 0; k < rays.size() && adjacent; ++k)
                    if (k != pi && k != ni && subset(common, rays[k].zero)) adjacent = false;
                if (!adjacent) continue;
                Vec v = s[pi] * rays[ni].v - s[ni] * rays[pi].v;
                set_bit(common, row);
                next.push_back({primitive(v), std::move(common)});
            }
        }
        for (std::size_t k = 0; k < rays.size(); ++k) {
            if (s[k] > 0) continue;
            if (s[k] == 0) set_bit(rays[k].zero, row);
            next.push_back(std::move(rays[k]));
        }
        rays = std::move(next);
    }

    std::vector<Vec> out;
    out.reserve(rays.size());
    for (auto& r : rays) out.push_back(std::move(r.v));
    return out;
}

}  // namespace

std::vector<Vec> polar_vertices(std::size_t dim, const std::vector<Vec>& points) {
    // Homogenize: (f, t) with p.f - t <= 0 and -t <= 0; bounded polar means t > 0 on every ray.
    std::vector<Vec> rows;
    rows.reserve(points.size() + 1);
    Vec t_row(dim + 1);
    t_row[dim] = -1;
    rows.push_back(t_row);
    for (const auto& p : points) {
        Vec r(p);
        r.push_back(Rational(-1));
        rows.push_back(std::move(r));
    }
    std::vector<Vec> verts;
    for (const auto& ray : extreme_rays(rows, dim + 1)) {
        if (ray[dim] <= 0) throw Error(ErrorKind::NotFullDimensional, "unbounded polar body");
        Vec f(ray.begin(), ray.end() - 1);
        verts.push_back((1 / ray[dim]) * f);
    }
    canonicalize(verts);
    return verts;
}

}  // namespace polynorm
