// Command-line front end for exact polyhedral normed spaces, push-outs and
// amalgamation runs. Exit codes: 0 success, 1 validation failure,
// 2 precondition failure, 3 budget exhaustion.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "polynorm/io.hpp"

using namespace polynorm;
using io::Json;

namespace {

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Parse:
        case ErrorKind::NotSymmetric:
        case ErrorKind::NotFullDimensional:
        case ErrorKind::InconsistentRepresentations:
        case ErrorKind::VerificationFailed:
        case ErrorKind::LpFailure:
            return 1;
        case ErrorKind::BudgetExceeded:
            return 3;
        default:
            return 2;
    }
}

struct Options {
    std::string workspace;
    std::optional<std::size_t> budget;
    bool decimal = false;
    std::string output;
};

std::size_t effective_budget(const Options& opt) {
    if (opt.budget) return *opt.budget;
    if (const char* env = std::getenv("POLYNORM_DIM_BUDGET")) {
        try {
            return std::stoul(env);
        } catch (const std::exception&) {
            throw Error(ErrorKind::Parse, std::string("POLYNORM_DIM_BUDGET is not a number: ") + env);
        }
    }
    return kDefaultDimBudget;
}

io::SpaceResolver make_resolver(const Options& opt) {
    io::SpaceResolver r(effective_budget(opt));
    if (!opt.workspace.empty()) r.load_workspace(opt.workspace);
    return r;
}

void emit_json(const Options& opt, const Json& j) {
    if (opt.output.empty())
        std::cout << j.dump(2) << "\n";
    else
        io::write_json_file(opt.output, j);
}

std::string shape(const NormedSpace& s) {
    return "dim " + std::to_string(s.dim) + ", " + std::to_string(s.ball.vertices().size()) + " vertices, " +
           std::to_string(s.ball.facets().size()) + " facets";
}

std::string format_vec(const Vec& v, const io::NumberFormat& fmt) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + fmt(v[i]);
    return out + ")";
}

int cmd_space(const std::string& action, const std::string& file, const Options& opt) {
    const std::size_t budget = effective_budget(opt);
    io::NumberFormat fmt{opt.decimal};
    SpacePtr s = io::space_from_json(io::read_json_file(file), budget);
    if (action == "validate") {
        std::cout << "ok: " << s->label << ", " << shape(*s) << "\n";
    } else if (action == "show") {
        std::cout << s->label << ": " << shape(*s) << "\n";
        std::cout << "hash " << io::content_hash(*s) << "\n";
        if (opt.decimal) std::cout << "decimal values are display-only approximations\n";
        for (std::size_t i = 0; i < s->dim; ++i) {
            Vec e(s->dim, Rational(0));
            e[i] = 1;
            std::cout << "norm of e" << (i + 1) << " = " << fmt(s->norm(e)) << "\n";
        }
        if (s->dim > 1) {
            Vec ones(s->dim, Rational(1));
            std::cout << "norm of " << format_vec(ones, fmt) << " = " << fmt(s->norm(ones)) << "\n";
        }
    } else {
        LinfEmbedding e = linf_embed(s, budget);
        IsometryCertificate c = certify(e.j);
        if (!c.isometric())
            throw Error(ErrorKind::VerificationFailed, "linf embedding certifies " + format_certificate(c, fmt));
        emit_json(opt, io::to_json(e.j));
    }
    return 0;
}

int cmd_certify(const std::string& file, const Options& opt) {
    io::SpaceResolver spaces = make_resolver(opt);
    io::NumberFormat fmt{opt.decimal};
    LinearMap m = io::map_from_json(io::read_json_file(file), spaces);
    IsometryCertificate c = certify(m);
    std::cout << "certificate " << format_certificate(c, fmt) << "\n";
    std::cout << "upper witness " << format_vec(c.upper_witness, fmt) << "\n";
    std::cout << "lower witness " << format_vec(c.lower_witness, fmt) << "\n";
    std::cout << "isometric " << (c.isometric() ? "yes" : "no") << "\n";
    if (!opt.output.empty()) {
        Json j;
        j["schema"] = io::kSchemaVersion;
        j["map"] = io::to_json(m);
        j["certificate"] = io::to_json(c);
        io::write_json_file(opt.output, j);
    }
    return 0;
}

Vec sample_vector(std::mt19937& rng, std::size_t dim) {
    std::uniform_int_distribution<long> num(-4, 4), den(1, 3);
    Vec v(dim);
    for (auto& x : v) x = Rational(num(rng), den(rng));
    return v;
}

int cmd_pushout(const std::vector<std::string>& files, bool verify_lemma, std::size_t check_formula,
                unsigned seed, const Options& opt) {
    io::SpaceResolver spaces = make_resolver(opt);
    const std::size_t budget = effective_budget(opt);
    io::NumberFormat fmt{opt.decimal};
    auto load = [&]() -> std::pair<LinearMap, LinearMap> {
        if (files.size() == 2)
            return {io::map_from_json(io::read_json_file(files[0]), spaces, "alpha"),
                    io::map_from_json(io::read_json_file(files[1]), spaces, "beta")};
        Json j = io::read_json_file(files[0]);
        if (!j.is_object() || !j.contains("alpha") || !j.contains("beta"))
            throw Error(ErrorKind::Parse, files[0] + ": expected an object with 'alpha' and 'beta'");
        return {io::map_from_json(j["alpha"], spaces, "alpha"), io::map_from_json(j["beta"], spaces, "beta")};
    };
    const auto [alpha, beta] = load();

    PushoutResult r = pushout(alpha, beta, budget);
    IsometryCertificate ap = certify(r.alpha_prime);
    IsometryCertificate bp = certify(r.beta_prime);
    Json report = io::to_json(r);
    Json verification;
    verification["square_commutes"] = true;
    verification["alpha_prime_certificate"] = io::to_json(ap);
    verification["beta_prime_certificate"] = io::to_json(bp);

    if (opt.decimal) std::cout << "decimal values are display-only approximations\n";
    std::cout << "push-out " << shape(*r.po) << "\n";
    for (const auto& w : r.warnings) std::cout << "warning: " << w << "\n";
    std::cout << "square commutes: yes\n";
    std::cout << "alpha_prime certificate " << format_certificate(ap, fmt) << "\n";
    std::cout << "beta_prime certificate " << format_certificate(bp, fmt) << "\n";

    if (verify_lemma) {
        LemmaReport lr = verify_lemma_isom(alpha, beta, budget);
        verification["lemma"] = io::to_json(lr);
        auto item = [](bool applies, bool holds) { return !applies ? "not applicable" : holds ? "holds" : "FAILS"; };
        std::cout << "lemma (b) isometric alpha, contractive beta: " << item(lr.b_applies, lr.b_holds) << "\n";
        std::cout << "lemma (c) bounded below: " << item(lr.c_applies, lr.c_holds) << "\n";
        if (lr.d_applies) {
            std::cout << "lemma (d) norm of alpha_prime inverse " << fmt(lr.alpha_prime_inverse_norm)
                      << "; max(1, norm alpha) = " << fmt(lr.bound_alpha) << " "
                      << (lr.bound_alpha_holds ? "holds" : "exceeded") << "; max(1, norm alpha^-1) = "
                      << fmt(lr.bound_alpha_inverse) << " " << (lr.bound_alpha_inverse_holds ? "holds" : "exceeded")
                      << "\n";
        } else {
            std::cout << "lemma (d) not applicable\n";
        }
        if (!lr.asserted_items_hold()) throw Error(ErrorKind::VerificationFailed, "lemma items (b)/(c) failed");
    }

    if (check_formula > 0) {
        MultiPushoutResult m{r.po, r.alpha_prime, {r.beta_prime}, {{alpha, beta}}, r};
        std::mt19937 rng(seed);
        Json checks = Json::array();
        for (std::size_t k = 0; k < check_formula; ++k) {
            Vec b = sample_vector(rng, alpha.cod()->dim);
            ExtensionNormCheck v = extension_norm_values(m, 0, b);
            Rational value = extension_norm_check(m, 0, b);
            std::cout << "formula b=" << format_vec(b, fmt) << " hull " << fmt(v.hull) << " lp " << fmt(v.lp)
                      << " equal\n";
            checks.push_back({{"b", io::to_json(b)}, {"hull", io::to_json(v.hull)}, {"lp", io::to_json(v.lp)},
                              {"norm_b", io::to_json(v.b_norm)}, {"value", io::to_json(value)}});
        }
        verification["formula_checks"] = checks;
    }

    report["verification"] = verification;
    Json out;
    out["schema"] = io::kSchemaVersion;
    for (auto& [k, v] : report.items()) out[k] = v;
    if (!opt.output.empty()) io::write_json_file(opt.output, out);
    return 0;
}

int cmd_multi_pushout(const std::string& file, bool sequential, const Options& opt) {
    io::SpaceResolver spaces = make_resolver(opt);
    const std::size_t budget = effective_budget(opt);
    io::NumberFormat fmt{opt.decimal};
    Json j = io::read_json_file(file);
    if (!j.is_object() || !j.contains("E") || !j.contains("pairs") || !j["pairs"].is_array())
        throw Error(ErrorKind::Parse, file + ": expected an object with 'E' and a 'pairs' list");
    SpacePtr e = spaces.resolve(j["E"], "E");
    std::vector<PushoutPair> pairs;
    for (std::size_t i = 0; i < j["pairs"].size(); ++i) {
        const Json& p = j["pairs"][i];
        const std::string path = "pairs[" + std::to_string(i) + "]";
        if (!p.is_object() || !p.contains("u") || !p.contains("t"))
            throw Error(ErrorKind::Parse, path + ": expected 'u' and 't'");
        pairs.push_back({io::map_from_json(p["u"], spaces, path + ".u"), io::map_from_json(p["t"], spaces, path + ".t")});
    }

    MultiPushoutResult r = multi_pushout(e, pairs, budget);
    IsometryCertificate ic = certify(r.iota);
    Json out;
    out["schema"] = io::kSchemaVersion;
    Json body = io::to_json(r);
    for (auto& [k, v] : body.items()) out[k] = v;
    out["iota_certificate"] = io::to_json(ic);
    if (opt.decimal) std::cout << "decimal values are display-only approximations\n";
    std::cout << "multi push-out " << shape(*r.po) << "\n";
    std::cout << "iota certificate " << format_certificate(ic, fmt) << "\n";
    Json ext = Json::array();
    for (std::size_t i = 0; i < r.extensions.size(); ++i) {
        IsometryCertificate c = certify(r.extensions[i]);
        ext.push_back(io::to_json(c));
        std::cout << "extension " << i << " certificate " << format_certificate(c, fmt) << "\n";
    }
    out["extension_certificates"] = ext;

    if (sequential) {
        MultiPushoutResult s = sequential_multi_pushout(e, pairs, budget);
        IsometryCertificate cc = certify(comparison_map(r, s));
        out["sequential"] = io::to_json(s);
        out["comparison_certificate"] = io::to_json(cc);
        std::cout << "sequential push-out " << shape(*s.po) << "\n";
        std::cout << "comparison map certificate " << format_certificate(cc, fmt) << "\n";
        if (!cc.isometric())
            throw Error(ErrorKind::VerificationFailed, "sequential and simultaneous push-outs differ");
    }
    if (!opt.output.empty()) io::write_json_file(opt.output, out);
    return 0;
}

std::string utc_now() {
    std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

int cmd_amalgam(const std::string& file, const Options& opt) {
    io::SpaceResolver spaces = make_resolver(opt);
    io::NumberFormat fmt{opt.decimal};
    RunConfig cfg = io::config_from_json(io::read_json_file(file), spaces);
    if (opt.budget || std::getenv("POLYNORM_DIM_BUDGET")) cfg.dim_budget = effective_budget(opt);
    if (opt.output.empty()) throw Error(ErrorKind::Precondition, "amalgam needs an output directory (-o)");

    const std::string started = utc_now();
    const auto t0 = std::chrono::steady_clock::now();
    AmalgamRun result = run(cfg);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const std::filesystem::path dir = opt.output;
    io::write_run_directory(dir, result, fmt);
    Json meta;
    meta["started_at"] = started;
    meta["finished_at"] = utc_now();
    meta["elapsed_seconds"] = seconds;
    meta["config_file"] = file;
    io::write_json_file(dir / "metadata.json", meta);

    std::cout << io::amalgam_summary(result, fmt);
    if (result.status == "budget_exceeded") return 3;
    if (!result.all_checks_pass()) throw Error(ErrorKind::VerificationFailed, "run checks failed");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact polyhedral normed spaces, push-outs and amalgamation runs"};
    app.require_subcommand(1);
    app.fallthrough();
    Options opt;
    std::size_t budget = 0;
    app.add_option("-w,--workspace", opt.workspace, "Directory whose spaces/*.json are resolvable by label");
    auto* budget_opt = app.add_option("--budget", budget, "Dimension budget (overrides POLYNORM_DIM_BUDGET)");
    app.add_flag("--decimal", opt.decimal, "Print 6-digit approximations in text output (display only)");

    auto* space = app.add_subcommand("space", "Validate, summarize or embed a space file");
    std::string space_action, space_file;
    space->add_option("action", space_action, "validate | show | linf-embed")
        ->required()
        ->check(CLI::IsMember({"validate", "show", "linf-embed"}));
    space->add_option("file", space_file, "Space JSON file")->required();
    space->add_option("-o,--output", opt.output, "Write JSON output here");

    auto* cert = app.add_subcommand("certify", "Certify the isometry constants of a map file");
    std::string cert_file;
    cert->add_option("file", cert_file, "Map JSON file")->required();
    cert->add_option("-o,--output", opt.output, "Write JSON report here");

    auto* po = app.add_subcommand("pushout", "Push out alpha and beta");
    std::vector<std::string> po_files;
    bool verify_lemma = false;
    std::size_t check_formula = 0;
    unsigned seed = 1;
    po->add_option("files", po_files, "One {alpha, beta} file or two map files")->required()->expected(1, 2);
    po->add_flag("--verify-lemma", verify_lemma, "Append the induced-map report");
    po->add_option("--check-formula", check_formula, "Sample N vectors through the extension norm formula");
    po->add_option("--seed", seed, "Seed for --check-formula samples");
    po->add_option("-o,--output", opt.output, "Write JSON report here");

    auto* mpo = app.add_subcommand("multi-pushout", "Push out a family of pairs");
    std::string mpo_file;
    bool sequential = false;
    mpo->add_option("file", mpo_file, "{E, pairs} JSON file")->required();
    mpo->add_flag("--sequential", sequential, "Also build one pair at a time and compare");
    mpo->add_option("-o,--output", opt.output, "Write JSON report here");

    auto* am = app.add_subcommand("amalgam", "Run an amalgamation config");
    std::string am_file;
    am->add_option("config", am_file, "Run config JSON file")->required();
    am->add_option("-o,--output", opt.output, "Run directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    if (*budget_opt) opt.budget = budget;

    try {
        if (*space) return cmd_space(space_action, space_file, opt);
        if (*cert) return cmd_certify(cert_file, opt);
        if (*po) return cmd_pushout(po_files, verify_lemma, check_formula, seed, opt);
        if (*mpo) return cmd_multi_pushout(mpo_file, sequential, opt);
        if (*am) return cmd_amalgam(am_file, opt);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
