#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

#include "polynorm/io.hpp"

namespace polynorm::io {

namespace {

[[noreturn]] void parse_fail(const std::string& path, const std::string& what) {
    throw Error(ErrorKind::Parse, "field '" + path + "': " + what);
}

const Json& field(const Json& j, const char* name, const std::string& path) {
    if (!j.is_object()) parse_fail(path, "expected an object");
    auto it = j.find(name);
    if (it == j.end()) parse_fail(path, std::string("missing '") + name + "'");
    return *it;
}

std::size_t size_from_json(const Json& j, const std::string& path) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
        parse_fail(path, "expected a non-negative integer");
    return j.get<std::size_t>();
}

std::vector<Vec> vec_list_from_json(const Json& j, std::size_t dim, const std::string& path) {
    if (!j.is_array()) parse_fail(path, "expected an array");
    std::vector<Vec> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string p = path + "[" + std::to_string(i) + "]";
        Vec v = vec_from_json(j[i], p);
        if (v.size() != dim)
            parse_fail(p, "has " + std::to_string(v.size()) + " entries, expected " + std::to_string(dim));
        out.push_back(std::move(v));
    }
    return out;
}

Json vec_list(const std::vector<Vec>& vs) {
    Json a = Json::array();
    for (const auto& v : vs) a.push_back(to_json(v));
    return a;
}

}  // namespace

Json to_json(const Rational& r) { return polynorm::to_string(r); }

Json to_json(const Vec& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(to_json(x));
    return a;
}

Json to_json(const Matrix& m) {
    Json a = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
    return a;
}

Rational rational_from_json(const Json& j, const std::string& path) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (!j.is_string()) parse_fail(path, "expected a rational string such as \"-3/4\"");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
        parse_fail(path, e.what());
    }
}

Vec vec_from_json(const Json& j, const std::string& path) {
    if (!j.is_array()) parse_fail(path, "expected an array");
    Vec v;
    v.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        v.push_back(rational_from_json(j[i], path + "[" + std::to_string(i) + "]"));
    return v;
}

Matrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols, const std::string& path) {
    if (!j.is_array()) parse_fail(path, "expected an array of rows");
    if (j.size() != rows)
        parse_fail(path, "has " + std::to_string(j.size()) + " rows, expected " + std::to_string(rows));
    return Matrix::from_rows(cols, vec_list_from_json(j, cols, path));
}

Json to_json(const Polytope& p) {
    Json j;
    j["dim"] = p.dim();
    j["vertices"] = vec_list(p.vertices());
    j["facets"] = vec_list(p.facets());
    return j;
}

PolytopeData polytope_data_from_json(const Json& j, const std::string& path) {
    if (!j.is_object()) parse_fail(path, "expected an object");
    PolytopeData d;
    if (j.contains("dim")) {
        d.dim = size_from_json(j["dim"], path + ".dim");
    } else if (j.contains("vertices") && j["vertices"].is_array() && !j["vertices"].empty() &&
               j["vertices"][0].is_array()) {
        d.dim = j["vertices"][0].size();
    } else {
        parse_fail(path, "missing 'dim'");
    }
    if (j.contains("vertices")) d.vertices = vec_list_from_json(j["vertices"], d.dim, path + ".vertices");
    if (j.contains("facets")) d.facets = vec_list_from_json(j["facets"], d.dim, path + ".facets");
    if (!d.vertices && !d.facets && d.dim > 0) parse_fail(path, "needs 'vertices' or 'facets'");
    return d;
}

Json to_json(const NormedSpace& s) {
    Json j;
    j["label"] = s.label;
    j["dim"] = s.dim;
    j["vertices"] = vec_list(s.ball.vertices());
    j["facets"] = vec_list(s.ball.facets());
    return j;
}

SpacePtr space_from_json(const Json& j, std::size_t budget, const std::string& path) {
    PolytopeData d = polytope_data_from_json(j, path);
    std::string label = "space";
    if (j.contains("label")) {
        if (!j["label"].is_string()) parse_fail(path + ".label", "expected a string");
        label = j["label"].get<std::string>();
    }
    if (d.dim == 0) return make_space(std::move(label), Polytope());
    return make_space(std::move(label), dd_convert(d, budget));
}

std::string content_hash(const NormedSpace& s) {
    std::string canon = std::to_string(s.dim) + ":";
    for (const auto& v : s.ball.vertices()) canon += polynorm::to_string(v) + ";";
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(canon.data(), canon.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw Error(ErrorKind::Precondition, "SHA-256 digest failed");
    std::ostringstream out;
    for (unsigned int i = 0; i < len; ++i)
        out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
    return out.str();
}

Json space_ref(const NormedSpace& s) {
    Json j;
    j["label"] = s.label;
    j["hash"] = content_hash(s);
    return j;
}

void SpaceResolver::add(const SpacePtr& s) {
    auto [it, inserted] = spaces_.emplace(s->label, s);
    if (!inserted && !same_space(*it->second, *s))
        throw Error(ErrorKind::Parse, "label '" + s->label + "' names two different spaces");
}

void SpaceResolver::load_workspace(const std::filesystem::path& dir) {
    const auto sdir = dir / "spaces";
    if (!std::filesystem::is_directory(sdir)) return;
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(sdir))
        if (e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) add(space_from_json(read_json_file(f), budget_, f.filename().string()));
}

SpacePtr SpaceResolver::resolve(const std::string& label) const {
    if (auto it = spaces_.find(label); it != spaces_.end()) return it->second;
    if (label == "zero") return zero_space();
    if (label == "R") return make_space("R", Polytope::linf_ball(1));
    auto numbered = [&](const std::string& prefix) -> std::optional<std::size_t> {
        if (label.rfind(prefix, 0) != 0 || label.size() == prefix.size()) return std::nullopt;
        const std::string rest = label.substr(prefix.size());
        if (rest.find_first_not_of("0123456789") != std::string::npos) return std::nullopt;
        return std::stoul(rest);
    };
    if (auto m = numbered("linf")) {
        auto s = linf_space(*m, budget_);
        return make_space(label, s->ball);
    }
    if (auto m = numbered("l1_")) {
        auto s = l1_space(*m, budget_);
        return make_space(label, s->ball);
    }
    throw Error(ErrorKind::Parse, "unknown space label '" + label + "'");
}

SpacePtr SpaceResolver::resolve(const Json& j, const std::string& path) const {
    if (j.is_string()) return resolve(j.get<std::string>());
    if (j.is_object() && !j.contains("vertices") && !j.contains("facets")) {
        SpacePtr s = resolve(field(j, "label", path).get<std::string>());
        if (j.contains("hash") && j["hash"] != content_hash(*s))
            parse_fail(path + ".hash", "does not match space '" + s->label + "'");
        return s;
    }
    return space_from_json(j, budget_, path);
}

Json to_json(const LinearMap& m) {
    Json j;
    j["dom"] = space_ref(*m.dom());
    j["cod"] = space_ref(*m.cod());
    j["matrix"] = to_json(m.matrix());
    return j;
}

LinearMap map_from_json(const Json& j, const SpaceResolver& spaces, const std::string& path) {
    SpacePtr dom = spaces.resolve(field(j, "dom", path), path + ".dom");
    SpacePtr cod = spaces.resolve(field(j, "cod", path), path + ".cod");
    return LinearMap(matrix_from_json(field(j, "matrix", path), cod->dim, dom->dim, path + ".matrix"),
                     dom, cod);
}

Json to_json(const IsometryCertificate& c) {
    Json j;
    j["upper"] = to_json(c.upper);
    j["lower"] = to_json(c.lower);
    j["upper_witness"] = to_json(c.upper_witness);
    j["lower_witness"] = to_json(c.lower_witness);
    j["empty_domain"] = c.empty_domain;
    j["isometric"] = c.isometric();
    return j;
}

Json to_json(const PushoutResult& r) {
    Json j;
    j["po"] = to_json(*r.po);
    j["alpha"] = to_json(r.alpha);
    j["beta"] = to_json(r.beta);
    j["alpha_prime"] = to_json(r.alpha_prime);
    j["beta_prime"] = to_json(r.beta_prime);
    j["q"] = to_json(r.q.matrix());
    j["section"] = to_json(r.section);
    j["delta_basis"] = vec_list(r.delta_basis);
    j["warnings"] = r.warnings;
    return j;
}

Json to_json(const LemmaReport& r) {
    Json j;
    j["alpha_certificate"] = to_json(r.alpha_cert);
    j["alpha_prime_certificate"] = to_json(r.alpha_prime_cert);
    j["beta_norm"] = to_json(r.beta_norm);
    j["b"] = {{"applies", r.b_applies}, {"holds", r.b_holds}};
    j["c"] = {{"applies", r.c_applies}, {"holds", r.c_holds}};
    Json d;
    d["applies"] = r.d_applies;
    if (r.d_applies) {
        d["alpha_norm"] = to_json(r.alpha_norm);
        d["alpha_inverse_norm"] = to_json(r.alpha_inverse_norm);
        d["alpha_prime_inverse_norm"] = to_json(r.alpha_prime_inverse_norm);
        d["bound_max_1_alpha_norm"] = to_json(r.bound_alpha);
        d["bound_max_1_alpha_inverse_norm"] = to_json(r.bound_alpha_inverse);
        d["holds_against_alpha_norm"] = r.bound_alpha_holds;
        d["holds_against_alpha_inverse_norm"] = r.bound_alpha_inverse_holds;
    }
    j["d"] = d;
    return j;
}

Json to_json(const MultiPushoutResult& r) {
    Json j;
    j["po"] = to_json(*r.po);
    j["iota"] = to_json(r.iota);
    Json ext = Json::array();
    for (const auto& e : r.extensions) ext.push_back(to_json(e));
    j["extensions"] = ext;
    Json pairs = Json::array();
    for (const auto& p : r.pairs) pairs.push_back({{"u", to_json(p.u)}, {"t", to_json(p.t)}});
    j["pairs"] = pairs;
    return j;
}

Json to_json(const RunConfig& cfg) {
    Json j;
    j["seed_space"] = to_json(*cfg.seed);
    j["catalog"] = {{"max_dim", cfg.max_dim}, {"grid", cfg.grid}};
    j["eps"] = to_json(cfg.eps);
    if (cfg.schedule == "halving") {
        j["schedule"] = "halving";
    } else {
        Json list = Json::array();
        for (const auto& e : cfg.explicit_eps) list.push_back(to_json(e));
        j["schedule"] = list;
    }
    j["stages"] = cfg.stages;
    j["dim_budget"] = cfg.dim_budget;
    j["pairs_per_stage"] = cfg.pairs_per_stage;
    j["net_per_embedding"] = cfg.net_per_embedding;
    j["net_nodes"] = cfg.net_nodes;
    j["variant"] = to_string(cfg.variant);
    return j;
}

RunConfig config_from_json(const Json& j, const SpaceResolver& spaces) {
    const std::string p = "config";
    RunConfig cfg;
    if (j.is_object() && j.contains("schema") && j["schema"] != kSchemaVersion)
        parse_fail(p + ".schema", "unsupported schema version");
    cfg.seed = spaces.resolve(field(j, "seed_space", p), p + ".seed_space");
    const Json& cat = field(j, "catalog", p);
    cfg.max_dim = size_from_json(field(cat, "max_dim", p + ".catalog"), p + ".catalog.max_dim");
    cfg.grid = static_cast<long>(size_from_json(field(cat, "grid", p + ".catalog"), p + ".catalog.grid"));
    cfg.eps = rational_from_json(field(j, "eps", p), p + ".eps");
    if (cfg.eps <= 0) parse_fail(p + ".eps", "must be positive");
    const Json& sched = field(j, "schedule", p);
    if (sched.is_string()) {
        if (sched != "halving") parse_fail(p + ".schedule", "expected \"halving\" or a list");
        cfg.schedule = "halving";
    } else if (sched.is_array()) {
        cfg.schedule = "explicit";
        cfg.explicit_eps = vec_from_json(sched, p + ".schedule");
    } else {
        parse_fail(p + ".schedule", "expected \"halving\" or a list");
    }
    cfg.stages = size_from_json(field(j, "stages", p), p + ".stages");
    cfg.dim_budget = size_from_json(field(j, "dim_budget", p), p + ".dim_budget");
    cfg.pairs_per_stage = size_from_json(field(j, "pairs_per_stage", p), p + ".pairs_per_stage");
    if (j.contains("net_per_embedding"))
        cfg.net_per_embedding = size_from_json(j["net_per_embedding"], p + ".net_per_embedding");
    if (j.contains("net_nodes")) cfg.net_nodes = size_from_json(j["net_nodes"], p + ".net_nodes");
    if (j.contains("variant")) {
        if (!j["variant"].is_string()) parse_fail(p + ".variant", "expected a string");
        try {
            cfg.variant = parse_variant(j["variant"].get<std::string>());
        } catch (const Error& e) {
            parse_fail(p + ".variant", e.what());
        }
    }
    if (cfg.schedule == "explicit" && cfg.explicit_eps.size() < cfg.stages)
        parse_fail(p + ".schedule", "fewer entries than stages");
    return cfg;
}

Json to_json(const DefectRecord& d) {
    Json j;
    j["source"] = d.source;
    j["eps"] = to_json(d.eps);
    j["w"] = to_json(d.w);
    j["s"] = to_json(d.s);
    j["alpha"] = to_json(d.alpha);
    j["beta"] = to_json(d.beta);
    j["t"] = to_json(d.t);
    j["t_prime_beta"] = to_json(d.t_prime_beta);
    j["residual"] = to_json(d.residual);
    j["lower_bound"] = to_json(d.lower_bound);
    j["checks"] = {{"upper_le_1", d.upper_ok}, {"lower_ge_bound", d.lower_ok}, {"residual_le_eps", d.residual_ok}};
    return j;
}

Json to_json(const StageLog& log) {
    Json j;
    j["stage"] = log.stage;
    j["eps"] = to_json(log.eps);
    j["eps_product"] = to_json(log.eps_product);
    j["net_nodes"] = log.net_nodes;
    j["link_certificate"] = to_json(log.link_cert);
    Json pairs = Json::array();
    for (const auto& p : log.pairs) {
        Json q;
        q["u_source"] = p.u_source;
        q["u"] = to_json(p.u);
        q["t"] = to_json(p.t);
        q["t_certificate"] = to_json(p.t_cert);
        q["extension_certificate"] = to_json(p.extension_cert);
        q["commutes"] = p.commutes;
        pairs.push_back(std::move(q));
    }
    j["pairs"] = pairs;
    Json triples = Json::array();
    for (const auto& t : log.triples) triples.push_back(to_json(t));
    j["triples"] = triples;
    return j;
}

Json to_json(const AmalgamRun& run) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["config"] = to_json(run.config);
    j["status"] = run.status;
    j["message"] = run.message;
    Json stages = Json::array();
    for (const auto& s : run.stages) {
        Json sj = to_json(*s);
        sj["hash"] = content_hash(*s);
        stages.push_back(std::move(sj));
    }
    j["stages"] = stages;
    Json links = Json::array();
    for (const auto& l : run.links) links.push_back(to_json(l));
    j["links"] = links;
    Json logs = Json::array();
    for (const auto& l : run.defect_log) logs.push_back(to_json(l));
    j["defect_log"] = logs;
    j["composite_certificate"] = run.composite_cert ? to_json(*run.composite_cert) : Json();
    j["all_checks_pass"] = run.all_checks_pass();
    return j;
}

Json parse_json(const std::string& text, const std::string& source) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw Error(ErrorKind::Parse, source + ":" + std::to_string(line) + ":" + std::to_string(col) +
                                          ": invalid JSON");
    }
}

Json read_json_file(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw Error(ErrorKind::Parse, "cannot read " + file.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_json(buf.str(), file.string());
}

void write_json_file(const std::filesystem::path& file, const Json& j) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw Error(ErrorKind::Precondition, "cannot write " + file.string());
    out << j.dump(2) << '\n';
}

}  // namespace polynorm::io
