#include <doctest.h>

#include <filesystem>

#include "polynorm/io.hpp"

using namespace polynorm;
using polynorm::io::Json;

namespace {

std::string parse_error_message(const std::string& text) {
    try {
        io::parse_json(text, "input");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Parse);
        return e.what();
    }
    return {};
}

}  // namespace

TEST_CASE("rationals round trip as strings") {
    for (const Rational& r : {Rational(0), Rational(-3, 4), Rational(7), Rational(22, 7)}) {
        Json j = io::to_json(r);
        CHECK(j.is_string());
        CHECK(io::rational_from_json(j, "x") == r);
    }
    CHECK(io::rational_from_json(Json(5), "x") == 5);
    CHECK_THROWS_AS(io::rational_from_json(Json("1/0"), "x"), Error);
    CHECK_THROWS_AS(io::rational_from_json(Json(0.5), "x"), Error);
}

TEST_CASE("spaces round trip") {
    auto hex = make_space("hex", 2,
                          {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {-1, -1}});
    Json j = io::to_json(*hex);
    CHECK(j["label"] == "hex");
    auto back = io::space_from_json(j, kDefaultDimBudget);
    CHECK(same_space(*hex, *back));
    CHECK(back->label == "hex");
    CHECK(io::content_hash(*hex) == io::content_hash(*back));
    CHECK(io::content_hash(*hex).size() == 64);
    CHECK(io::content_hash(*hex) != io::content_hash(*linf_space(2)));

    // Facets alone are enough.
    Json only_facets = {{"label", "sq"}, {"dim", 2}, {"facets", j["facets"]}};
    CHECK(same_space(*io::space_from_json(only_facets, kDefaultDimBudget), *hex));

    Json bad = {{"dim", 2}, {"vertices", {{"1", "0"}, {"-1", "0"}, {"0", "1"}}}};
    CHECK_THROWS_AS(io::space_from_json(bad, kDefaultDimBudget), Error);

    Json ragged = {{"dim", 2}, {"vertices", {{"1", "0"}, {"-1"}}}};
    try {
        io::space_from_json(ragged, kDefaultDimBudget);
        FAIL("expected parse error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Parse);
        CHECK(std::string(e.what()).find("space.vertices[1]") != std::string::npos);
    }
}

TEST_CASE("resolver") {
    io::SpaceResolver spaces;
    CHECK(spaces.resolve("R")->dim == 1);
    CHECK(spaces.resolve("zero")->dim == 0);
    CHECK(spaces.resolve("linf3")->ball == Polytope::linf_ball(3));
    CHECK(spaces.resolve("l1_2")->ball == Polytope::l1_ball(2));
    CHECK_THROWS_AS(spaces.resolve("nowhere"), Error);
    CHECK_THROWS_AS(spaces.resolve("linf"), Error);

    auto sq = linf_space(2);
    spaces.add(make_space("box", sq->ball));
    CHECK(spaces.resolve("box")->ball == sq->ball);
    CHECK_THROWS_AS(spaces.add(make_space("box", Polytope::l1_ball(2))), Error);

    Json ref = io::space_ref(*spaces.resolve("box"));
    CHECK(spaces.resolve(ref, "r")->ball == sq->ball);
    ref["hash"] = "00";
    CHECK_THROWS_AS(spaces.resolve(ref, "r"), Error);
}

TEST_CASE("workspace loading") {
    auto dir = std::filesystem::temp_directory_path() / "polynorm_test_ws";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir / "spaces");
    io::write_json_file(dir / "spaces" / "diamond.json", io::to_json(*make_space("diamond", Polytope::l1_ball(2))));
    io::SpaceResolver spaces;
    spaces.load_workspace(dir);
    CHECK(spaces.resolve("diamond")->ball == Polytope::l1_ball(2));
    std::filesystem::remove_all(dir);
}

TEST_CASE("maps round trip") {
    io::SpaceResolver spaces;
    Json j = {{"dom", "R"}, {"cod", "linf2"}, {"matrix", {{"1"}, {"1/2"}}}};
    LinearMap m = io::map_from_json(j, spaces);
    CHECK(m.matrix() == Matrix{{1}, {Rational(1, 2)}});
    Json out = io::to_json(m);
    CHECK(out["dom"]["label"] == "R");
    LinearMap again = io::map_from_json(out, spaces);
    CHECK(again.matrix() == m.matrix());

    Json wrong = {{"dom", "R"}, {"cod", "linf2"}, {"matrix", {{"1"}}}};
    CHECK_THROWS_AS(io::map_from_json(wrong, spaces), Error);
}

TEST_CASE("json syntax errors carry line and column") {
    std::string msg = parse_error_message("{\n  \"a\": 1,\n  \"b\": ]\n}");
    CHECK(msg.find("input:3:") != std::string::npos);
    CHECK(parse_error_message("{}").empty());
}

TEST_CASE("config round trip") {
    io::SpaceResolver spaces;
    Json j = {{"seed_space", "R"},
              {"catalog", {{"max_dim", 2}, {"grid", 1}}},
              {"eps", "1"},
              {"schedule", "halving"},
              {"stages", 2},
              {"dim_budget", 10},
              {"pairs_per_stage", 3}};
    RunConfig cfg = io::config_from_json(j, spaces);
    CHECK(cfg.seed->dim == 1);
    CHECK(cfg.eps == 1);
    CHECK(cfg.stages == 2);
    CHECK(cfg.variant == Variant::Gurarii);
    Json out = io::to_json(cfg);
    RunConfig again = io::config_from_json(out, spaces);
    CHECK(io::to_json(again).dump() == out.dump());

    Json bad = j;
    bad["eps"] = "-1";
    CHECK_THROWS_AS(io::config_from_json(bad, spaces), Error);
    bad = j;
    bad["schedule"] = Json::array({"1/2"});
    CHECK_THROWS_AS(io::config_from_json(bad, spaces), Error);
    bad = j;
    bad.erase("stages");
    CHECK_THROWS_AS(io::config_from_json(bad, spaces), Error);
}

TEST_CASE("pushout report serializes") {
    auto r = linf_space(1);
    auto sq = linf_space(2);
    PushoutResult p = pushout(LinearMap(Matrix{{1}, {0}}, r, sq), LinearMap::identity(r));
    Json j = io::to_json(p);
    CHECK(j["po"]["dim"] == 2);
    Json lemma = io::to_json(verify_lemma_isom(p.alpha, p.beta));
    CHECK(lemma["b"]["applies"] == true);
    CHECK(lemma["b"]["holds"] == true);
}
