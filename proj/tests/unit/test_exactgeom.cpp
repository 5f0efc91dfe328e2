#include <doctest.h>

#include "../support/oracles.hpp"
#include "../support/random_instances.hpp"
#include "polynorm/linalg.hpp"
#include "polynorm/lp.hpp"
#include "polynorm/polytope.hpp"

using namespace polynorm;
using polynorm::testing::brute_force_facets;
using polynorm::testing::brute_force_vertices;

namespace {

Vec v2(long a, long b) { return {Rational(a), Rational(b)}; }
Vec v3(long a, long b, long c) { return {Rational(a), Rational(b), Rational(c)}; }

std::vector<Vec> sorted(std::vector<Vec> pts) {
    canonicalize(pts);
    return pts;
}

std::vector<Vec> hexagon_points() {
    return {v2(1, 0), v2(-1, 0), v2(0, 1), v2(0, -1), v2(1, 1), v2(-1, -1)};
}

}  // namespace

TEST_CASE("rational parsing and printing") {
    CHECK(parse_rational("3/6") == Rational(1, 2));
    CHECK(parse_rational("-4") == Rational(-4));
    CHECK(parse_rational("+7/14") == Rational(1, 2));
    CHECK(to_string(Rational(-6, 4)) == "-3/2");
    CHECK(to_string(Rational(5)) == "5");
    CHECK_THROWS_AS(parse_rational("1/0"), Error);
    CHECK_THROWS_AS(parse_rational("abc"), Error);
    CHECK_THROWS_AS(parse_rational("1/-2"), Error);
    CHECK_THROWS_AS(parse_rational(""), Error);
}

TEST_CASE("row reduction, nullspace and inverse") {
    const Matrix m{{1, 2, 3}, {2, 4, 6}, {1, 0, 1}};
    CHECK(rank(m) == 2);
    const auto ns = nullspace(m);
    REQUIRE(ns.size() == 1);
    CHECK(is_zero(m * ns[0]));
    const Matrix a{{2, 1}, {1, 1}};
    const auto inv = inverse(a);
    REQUIRE(inv);
    CHECK(a * *inv == Matrix::identity(2));
    CHECK_FALSE(inverse(Matrix{{1, 2}, {2, 4}}));
    const auto x = solve(a, Vec{Rational(3), Rational(2)});
    REQUIRE(x);
    CHECK(*x == Vec{Rational(1), Rational(1)});
}

TEST_CASE("exact simplex") {
    SUBCASE("bounded optimum") {
        // max x + y s.t. x + 2y <= 4, 3x + y <= 6  -> (8/5, 6/5), value 14/5
        lp::LinearProgram p;
        const auto x = p.add_variable();
        const auto y = p.add_variable();
        p.add_constraint({{x, 1}, {y, 2}}, lp::Sense::LessEqual, 4);
        p.add_constraint({{x, 3}, {y, 1}}, lp::Sense::LessEqual, 6);
        p.maximize({{x, 1}, {y, 1}});
        const auto s = p.solve();
        REQUIRE(s.status == lp::Status::Optimal);
        CHECK(s.objective == Rational(14, 5));
        CHECK(s.values[x] == Rational(8, 5));
        CHECK(s.values[y] == Rational(6, 5));
    }
    SUBCASE("free variables and equalities") {
        // min |z| encoded as min t s.t. t >= z, t >= -z, z = -3/2
        lp::LinearProgram p;
        const auto z = p.add_variable(true);
        const auto t = p.add_variable();
        p.add_constraint({{t, 1}, {z, -1}}, lp::Sense::GreaterEqual, 0);
        p.add_constraint({{t, 1}, {z, 1}}, lp::Sense::GreaterEqual, 0);
        p.add_constraint({{z, 1}}, lp::Sense::Equal, Rational(-3, 2));
        p.minimize({{t, 1}});
        const auto s = p.solve();
        REQUIRE(s.status == lp::Status::Optimal);
        CHECK(s.objective == Rational(3, 2));
        CHECK(s.values[z] == Rational(-3, 2));
    }
    SUBCASE("infeasible and unbounded") {
        lp::LinearProgram p;
        const auto x = p.add_variable();
        p.add_constraint({{x, 1}}, lp::Sense::LessEqual, -1);
        p.minimize({{x, 1}});
        CHECK(p.solve().status == lp::Status::Infeasible);

        lp::LinearProgram q;
        const auto y = q.add_variable(true);
        q.minimize({{y, 1}});
        CHECK(q.solve().status == lp::Status::Unbounded);
    }
    SUBCASE("redundant equality rows") {
        lp::LinearProgram p;
        const auto x = p.add_variable();
        const auto y = p.add_variable();
        p.add_constraint({{x, 1}, {y, 1}}, lp::Sense::Equal, 2);
        p.add_constraint({{x, 2}, {y, 2}}, lp::Sense::Equal, 4);
        p.minimize({{x, 1}, {y, 3}});
        const auto s = p.solve();
        REQUIRE(s.status == lp::Status::Optimal);
        CHECK(s.objective == 2);
    }
}

TEST_CASE("dd_convert on the catalog examples") {
    SUBCASE("square gives the sup-norm facets") {
        const auto p = Polytope::from_vertices(2, {v2(1, 1), v2(1, -1), v2(-1, 1), v2(-1, -1)});
        CHECK(p.facets() == sorted({v2(1, 0), v2(-1, 0), v2(0, 1), v2(0, -1)}));
        CHECK(p == Polytope::linf_ball(2));
    }
    SUBCASE("cross-polytope gives the sum-norm facets") {
        const auto p = Polytope::from_vertices(2, {v2(1, 0), v2(-1, 0), v2(0, 1), v2(0, -1)});
        CHECK(p.facets() == sorted({v2(1, 1), v2(1, -1), v2(-1, 1), v2(-1, -1)}));
        CHECK(p == Polytope::l1_ball(2));
    }
    SUBCASE("hexagon matches brute-force supporting lines") {
        const auto p = Polytope::from_vertices(2, hexagon_points());
        CHECK(p.facets().size() == 6);
        CHECK(p.facets() == brute_force_facets(2, sorted(hexagon_points())));
        CHECK(p.vertices() == sorted(hexagon_points()));
    }
    SUBCASE("redundant input points are filtered") {
        auto pts = hexagon_points();
        pts.push_back(v2(0, 0));
        pts.push_back(v2(1, 1));
        const Vec half{Rational(1, 2), Rational(1, 2)};
        pts.push_back(half);
        pts.push_back(-half);
        const auto p = Polytope::from_vertices(2, pts);
        CHECK(p.vertices() == sorted(hexagon_points()));
    }
    SUBCASE("H input yields the same body") {
        const auto h = Polytope::from_facets(2, {v2(1, 1), v2(1, -1), v2(-1, 1), v2(-1, -1)});
        CHECK(h == Polytope::l1_ball(2));
        // Redundant functional x1 <= 1 (implied by |x1|+|x2| <= 1) is dropped.
        const auto h2 = Polytope::from_facets(
            2, {v2(1, 1), v2(1, -1), v2(-1, 1), v2(-1, -1), v2(1, 0), v2(-1, 0)});
        CHECK(h2.facets().size() == 4);
    }
    SUBCASE("both representations must agree") {
        PolytopeData ok{2, std::vector<Vec>{v2(1, 1), v2(1, -1), v2(-1, 1), v2(-1, -1)},
                        std::vector<Vec>{v2(1, 0), v2(-1, 0), v2(0, 1), v2(0, -1)}};
        CHECK(dd_convert(ok) == Polytope::linf_ball(2));
        PolytopeData bad{2, std::vector<Vec>{v2(1, 1), v2(1, -1), v2(-1, 1), v2(-1, -1)},
                         std::vector<Vec>{v2(1, 1), v2(1, -1), v2(-1, 1), v2(-1, -1)}};
        CHECK_THROWS_AS(dd_convert(bad), Error);
    }
}

TEST_CASE("dd_convert error paths") {
    try {
        Polytope::from_vertices(2, {v2(1, 0), v2(0, 1), v2(-1, 0)});
        FAIL("expected NotSymmetric");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotSymmetric);
        CHECK(std::string(e.what()).find("(0, 1)") != std::string::npos);
    }
    try {
        Polytope::from_vertices(2, {v2(1, 1), v2(-1, -1)});
        FAIL("expected NotFullDimensional");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotFullDimensional);
    }
    try {
        Polytope::from_vertices(13, {unit_vec(13, 0)}, 12);
        FAIL("expected BudgetExceeded");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::BudgetExceeded);
    }
    CHECK_THROWS_AS(dd_convert(PolytopeData{2, std::nullopt, std::nullopt}), Error);
}

TEST_CASE("project_polytope") {
    SUBCASE("coordinate projection of the cube") {
        const Matrix q{{1, 0, 0}, {0, 1, 0}};
        CHECK(project_polytope(Polytope::linf_ball(3), q) == Polytope::linf_ball(2));
    }
    SUBCASE("push-out projection gives the square") {
        const std::vector<Vec> pts{v3(1, 1, 0),  v3(1, -1, 0), v3(-1, 1, 0),
                                   v3(-1, -1, 0), v3(0, 0, 1), v3(0, 0, -1)};
        const auto p = Polytope::from_vertices(3, pts);
        const Matrix q{{1, 0, 1}, {0, 1, 0}};
        std::vector<Vec> images;
        for (const auto& v : pts) images.push_back(q * v);
        const auto oracle = brute_force_vertices(2, images);
        const auto img = project_polytope(p, q);
        CHECK(img.vertices() == oracle);
        CHECK(img == Polytope::linf_ball(2));
    }
    SUBCASE("identity") {
        const auto hex = Polytope::from_vertices(2, hexagon_points());
        CHECK(project_polytope(hex, Matrix::identity(2)) == hex);
    }
    SUBCASE("rank-deficient map is refused") {
        try {
            project_polytope(Polytope::linf_ball(2), Matrix{{1, 1}, {2, 2}});
            FAIL("expected NotSurjective");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::NotSurjective);
        }
    }
}

TEST_CASE("l1_join") {
    const auto seg = Polytope::linf_ball(1);
    CHECK(l1_join(seg, seg) == Polytope::l1_ball(2));
    CHECK(l1_join(seg, seg).facets() == Polytope::l1_ball(2).facets());

    const auto j = l1_join(Polytope::linf_ball(2), seg);
    CHECK(j.dim() == 3);
    CHECK(j.vertices().size() == 6);
    CHECK(j.facets().size() == 8);
    // Oracle: independent conversion of the six listed vertices.
    const std::vector<Vec> listed{v3(1, 1, 0),  v3(1, -1, 0), v3(-1, 1, 0),
                                  v3(-1, -1, 0), v3(0, 0, 1), v3(0, 0, -1)};
    CHECK(j.facets() == brute_force_facets(3, sorted(listed)));
    CHECK(j == Polytope::from_vertices(3, listed));

    testing::Rng rng(7);
    for (int k = 0; k < 10; ++k) {
        const auto a = testing::random_lattice_polytope(rng, 1 + k % 3);
        const auto b = testing::random_lattice_polytope(rng, 1 + (k / 3) % 2);
        const auto s = l1_join(a, b);
        CHECK(s.dim() == a.dim() + b.dim());
        CHECK(s == Polytope::from_vertices(s.dim(), s.vertices()));
        CHECK(s.facets() == Polytope::from_vertices(s.dim(), s.vertices()).facets());
    }
}

TEST_CASE("membership_gauge examples") {
    CHECK(membership_gauge(Polytope::linf_ball(2), v2(3, 4)) == 4);
    CHECK(membership_gauge(Polytope::l1_ball(2), v2(1, 1)) == 2);
    const auto hex = Polytope::from_vertices(2, hexagon_points());
    CHECK(gauge_lp(hex, v2(1, 1)) == 1);
    CHECK(membership_gauge(hex, v2(1, 1)) == 1);
    CHECK(membership_gauge(hex, v2(0, 0)) == 0);
    CHECK(membership_gauge(hex, v2(1, -1)) == 2);
}

TEST_CASE("V-H roundtrip reproduces the vertex set") {
    testing::Rng rng(11);
    for (int k = 0; k < 40; ++k) {
        const std::size_t dim = 1 + static_cast<std::size_t>(k % 4);
        const auto p = testing::random_lattice_polytope(rng, dim, 2);
        const auto back = Polytope::from_facets(dim, p.facets());
        CHECK(back.vertices() == p.vertices());
        CHECK(back.facets() == p.facets());
        if (dim <= 3) CHECK(p.facets() == brute_force_facets(dim, p.vertices()));
    }
}

TEST_CASE("facet and vertex gauges agree on random inputs") {
    testing::Rng rng(2024);
    int checked = 0;
    for (int k = 0; k < 40; ++k) {
        const std::size_t dim = 1 + static_cast<std::size_t>(k % 4);
        const auto p = testing::random_lattice_polytope(rng, dim, 2);
        for (int j = 0; j < 5; ++j) {
            const Vec x = testing::random_rational_vec(rng, dim, 3);
            CHECK(gauge(p, x) == gauge_lp(p, x));
            ++checked;
        }
    }
    CHECK(checked == 200);
}

TEST_CASE("gauge is a norm") {
    testing::Rng rng(5);
    for (int k = 0; k < 30; ++k) {
        const std::size_t dim = 1 + static_cast<std::size_t>(k % 4);
        const auto p = testing::random_lattice_polytope(rng, dim, 2);
        const Vec x = testing::random_rational_vec(rng, dim, 2);
        const Vec y = testing::random_rational_vec(rng, dim, 2);
        const Rational lambda(testing::uniform(rng, -5, 5), testing::uniform(rng, 1, 4));
        CHECK((gauge(p, x) == 0) == is_zero(x));
        CHECK(gauge(p, lambda * x) == abs(lambda) * gauge(p, x));
        CHECK(gauge(p, x + y) <= gauge(p, x) + gauge(p, y));
    }
}

TEST_CASE("projection gauge equals the kernel-minimisation LP") {
    testing::Rng rng(99);
    int checked = 0;
    while (checked < 25) {
        const std::size_t n = 2 + static_cast<std::size_t>(checked % 3);
        const std::size_t m = static_cast<std::size_t>(testing::uniform(rng, 1, long(n) - 1));
        const Matrix q = testing::random_matrix(rng, m, n, 2);
        if (rank(q) < m) continue;
        const auto p = testing::random_lattice_polytope(rng, n, 2);
        const auto img = project_polytope(p, q);
        const Vec x = testing::random_rational_vec(rng, n, 2);

        // min s subject to f.(x + K c) <= s over the facets of p, c free.
        const auto kernel = nullspace(q);
        lp::LinearProgram prog;
        const auto c0 = prog.add_variables(kernel.size(), true);
        const auto s = prog.add_variable(true);
        for (const auto& f : p.facets()) {
            std::vector<std::pair<std::size_t, Rational>> terms{{s, Rational(-1)}};
            for (std::size_t j = 0; j < kernel.size(); ++j) terms.push_back({c0 + j, dot(f, kernel[j])});
            prog.add_constraint(std::move(terms), lp::Sense::LessEqual, -dot(f, x));
        }
        prog.minimize({{s, Rational(1)}});
        const auto sol = prog.solve();
        REQUIRE(sol.status == lp::Status::Optimal);
        CHECK(membership_gauge(img, q * x) == sol.objective);
        ++checked;
    }
}
