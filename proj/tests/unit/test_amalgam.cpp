#include <doctest.h>

#include <algorithm>

#include "polynorm/amalgam.hpp"
#include "polynorm/linalg.hpp"

using namespace polynorm;

namespace {

Vec v1(long a) { return {Rational(a)}; }

SpacePtr real_line() { return make_space("R", 1, {v1(1), v1(-1)}); }

const Catalog& tiny_catalog() {
    static const Catalog cat = build_catalog(2, 1);
    return cat;
}

RunConfig tiny_config() {
    RunConfig cfg;
    cfg.seed = real_line();
    cfg.max_dim = 2;
    cfg.grid = 1;
    cfg.eps = 1;
    cfg.stages = 2;
    cfg.dim_budget = 10;
    cfg.pairs_per_stage = 2;
    return cfg;
}

}  // namespace

TEST_CASE("catalog on the line") {
    Catalog c = build_catalog(1, 1);
    REQUIRE(c.spaces.size() == 1);
    CHECK(c.spaces[0]->label == "R");
    REQUIRE(c.embeddings.size() == 2);
    CHECK(c.embeddings[0].map.matrix() == Matrix{{-1}});
    CHECK(c.embeddings[1].map.matrix() == Matrix{{1}});
}

TEST_CASE("catalog in the plane") {
    const Catalog& c = tiny_catalog();
    CHECK(c.spaces.size() == 9);
    auto find = [&](const Polytope& p) {
        return std::find_if(c.spaces.begin(), c.spaces.end(),
                            [&](const SpacePtr& s) { return s->ball == p; }) != c.spaces.end();
    };
    CHECK(find(Polytope::l1_ball(2)));
    CHECK(find(Polytope::linf_ball(2)));
    bool diagonal = false;
    for (const auto& e : c.embeddings) {
        CHECK(certify(e.map).isometric());
        CHECK(e.map.dom() == c.spaces[e.dom_index]);
        CHECK(e.map.cod() == c.spaces[e.cod_index]);
        if (e.map.cod()->ball == Polytope::linf_ball(2) && e.map.matrix() == Matrix{{1}, {1}}) diagonal = true;
    }
    CHECK(diagonal);
}

TEST_CASE("contraction net on the line") {
    auto r = real_line();
    auto net = contraction_net(r, {r}, Rational(1, 2));
    std::vector<Rational> values;
    for (const auto& t : net) {
        CHECK(operator_norm(t) <= 1);
        values.push_back(t.matrix()(0, 0));
    }
    CHECK(values == std::vector<Rational>{1, -1, Rational(1, 2), Rational(-1, 2), 0});

    auto coarse = contraction_net(r, {r}, Rational(100));
    REQUIRE(coarse.size() == 1);
    CHECK(coarse[0].matrix().is_zero());
}

TEST_CASE("contraction net coverage into the square") {
    auto r = real_line();
    auto sq = linf_space(2);
    const Rational eps(1, 2);
    auto net = contraction_net(sq, {r}, eps);
    NetSpec spec = net_spec(r, sq, eps);
    for (const auto& t : net) CHECK(in_net(spec, t));
    // Identity-like embedding is itself on the lattice.
    LinearMap e1(Matrix{{1}, {0}}, r, sq);
    CHECK(in_net(spec, e1));

    // Oracle: every contractive (1+eps)-isometry with entries in quarter steps
    // lies within eps of some member.
    int covered = 0;
    for (long a = -4; a <= 4; ++a)
        for (long b = -4; b <= 4; ++b) {
            LinearMap s(Matrix{{Rational(a, 4)}, {Rational(b, 4)}}, r, sq);
            if (!certify(s).contractive_eps_isometry(eps)) continue;
            Rational best = -1;
            for (const auto& t : net) {
                Rational d = operator_norm(difference(s, t));
                if (best < 0 || d < best) best = d;
            }
            CHECK(best < eps);
            ++covered;
        }
    CHECK(covered > 0);
}

TEST_CASE("net enumeration budget") {
    auto r = real_line();
    auto sq = linf_space(2);
    CHECK_THROWS_AS(contraction_net(sq, {r}, Rational(1, 64), 10'000, 5), Error);
}

TEST_CASE("ud step") {
    auto r = real_line();
    StepResult none = ud_step(r, {});
    CHECK(none.space == r);

    auto sq = linf_space(2);
    LinearMap u(Matrix{{1}, {0}}, r, sq);
    StepResult one = ud_step(r, {{u, LinearMap::identity(r)}});
    CHECK(same_space(*one.space, *sq));
    CHECK(certify(one.extensions[0]).isometric());

    StepResult two = ud_step(r, {{u, LinearMap::identity(r)}, {u, LinearMap::identity(r)}});
    for (const auto& ext : two.extensions) {
        CHECK(compose(ext, u).matrix() == two.link.matrix());
        CHECK(certify(ext).isometric());
    }
}

TEST_CASE("gurarii step edge cases") {
    auto r = real_line();
    RunConfig cfg = tiny_config();
    Catalog line = build_catalog(1, 1);
    GurariiStep same = gurarii_step(r, line, Rational(1, 2), cfg);
    CHECK(same.log.pairs.empty());
    CHECK(same.log.link_cert.isometric());

    GurariiStep zero = gurarii_step(r, tiny_catalog(), Rational(100), cfg);
    REQUIRE_FALSE(zero.log.pairs.empty());
    for (const auto& p : zero.log.pairs) CHECK(p.t.is_zero());
    CHECK(zero.log.link_cert.isometric());
    CHECK(zero.log.triples.empty());
}

TEST_CASE("measured defect triples") {
    auto r = real_line();
    auto sq = linf_space(2);
    LinearMap id = LinearMap::identity(r);
    LinearMap w(Matrix{{1}, {0}}, r, sq);

    DefectRecord exact = measure_aud_defect(r, {id, id, id, id, id}, Rational(1, 2));
    CHECK(exact.residual == 0);
    CHECK(exact.t_prime_beta.isometric());

    DefectRecord worked = measure_aud_defect(r, {w, id, w, id, LinearMap::identity(sq)}, Rational(1, 2));
    CHECK(worked.ok());
    CHECK(worked.residual <= Rational(1, 2));

    // Off-lattice s into the square, at two tolerances.
    LinearMap s(Matrix{{Rational(13, 14)}, {Rational(1, 3)}}, r, sq);
    Rational previous = 1;
    for (const Rational& eps : {Rational(1, 2), Rational(1, 8)}) {
        DefectRecord d = measure_aud_defect(sq, {w, s, w, id, LinearMap::identity(sq)}, eps);
        CHECK(d.ok());
        CHECK(d.residual <= eps);
        CHECK(eps <= previous);
        previous = eps;
    }

    LinearMap flip(Matrix{{0, 1}, {1, 0}}, sq, sq);
    try {
        measure_aud_defect(r, {w, id, w, id, flip}, Rational(1, 2));
        FAIL("expected square error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SquareNotCommuting);
    }
}

TEST_CASE("eps schedules") {
    RunConfig cfg = tiny_config();
    CHECK(eps_schedule(cfg) == std::vector<Rational>{Rational(1, 2), Rational(1, 4)});
    cfg.schedule = "explicit";
    cfg.explicit_eps = {Rational(1, 3), Rational(1, 5)};
    CHECK(eps_schedule(cfg) == cfg.explicit_eps);
    cfg.schedule = "weird";
    CHECK_THROWS_AS(eps_schedule(cfg), Error);
}

TEST_CASE("amalgam runs") {
    RunConfig cfg = tiny_config();
    cfg.stages = 0;
    AmalgamRun empty = run(cfg);
    CHECK(empty.stages.size() == 1);
    CHECK(empty.defect_log.empty());

    cfg = tiny_config();
    AmalgamRun a = run(cfg);
    CHECK(a.status == "complete");
    REQUIRE(a.stages.size() == 3);
    CHECK(a.all_checks_pass());
    for (std::size_t n = 0; n + 1 < a.stages.size(); ++n) CHECK(a.stages[n]->dim <= a.stages[n + 1]->dim);
    for (const auto& log : a.defect_log) {
        CHECK_FALSE(log.triples.empty());
        for (const auto& t : log.triples) CHECK(t.residual <= log.eps);
    }
    REQUIRE(a.composite_cert);
    CHECK(a.composite_cert->isometric());

    AmalgamRun b = run(cfg);
    REQUIRE(b.stages.size() == a.stages.size());
    for (std::size_t n = 0; n < a.stages.size(); ++n) CHECK(a.stages[n]->ball == b.stages[n]->ball);
    for (std::size_t n = 0; n < a.links.size(); ++n) CHECK(a.links[n].matrix() == b.links[n].matrix());

    cfg.dim_budget = 2;
    AmalgamRun cut = run(cfg);
    CHECK(cut.status == "budget_exceeded");
    CHECK(cut.stages.size() < 3);
}

TEST_CASE("other variants") {
    RunConfig cfg = tiny_config();
    cfg.variant = Variant::UD;
    AmalgamRun ud = run(cfg);
    CHECK(ud.status == "complete");
    CHECK(ud.all_checks_pass());
    for (const auto& log : ud.defect_log)
        for (const auto& p : log.pairs) {
            CHECK(p.t_cert.isometric());
            CHECK(p.extension_cert.isometric());
        }

    cfg = tiny_config();
    cfg.variant = Variant::Linf;
    cfg.stages = 1;
    AmalgamRun li = run(cfg);
    CHECK(li.status == "complete");
    CHECK(li.all_checks_pass());
}
