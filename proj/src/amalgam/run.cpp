#include "polynorm/amalgam.hpp"

namespace polynorm {

const char* to_string(Variant v) {
    switch (v) {
        case Variant::Gurarii: return "gurarii";
        case Variant::UD: return "ud";
        case Variant::Linf: return "linf";
    }
    return "gurarii";
}

Variant parse_variant(const std::string& s) {
    if (s == "gurarii") return Variant::Gurarii;
    if (s == "ud") return Variant::UD;
    if (s == "linf") return Variant::Linf;
    throw Error(ErrorKind::Parse, "unknown variant '" + s + "'");
}

std::vector<Rational> eps_schedule(const RunConfig& cfg) {
    std::vector<Rational> out;
    if (cfg.schedule == "halving") {
        Rational e = cfg.eps;
        for (std::size_t n = 0; n < cfg.stages; ++n) {
            e /= 2;
            out.push_back(e);
        }
    } else if (cfg.schedule == "explicit") {
        if (cfg.explicit_eps.size() < cfg.stages)
            throw Error(ErrorKind::Precondition, "explicit schedule has fewer entries than stages");
        out.assign(cfg.explicit_eps.begin(), cfg.explicit_eps.begin() + static_cast<std::ptrdiff_t>(cfg.stages));
    } else {
        throw Error(ErrorKind::Parse, "unknown schedule '" + cfg.schedule + "'");
    }
    for (const auto& e : out)
        if (e <= 0) throw Error(ErrorKind::Precondition, "schedule entries must be positive");
    return out;
}

bool AmalgamRun::all_checks_pass() const {
    if (composite_cert && !composite_cert->isometric()) return false;
    for (const auto& log : defect_log) {
        if (!log.link_cert.isometric()) return false;
        for (const auto& p : log.pairs)
            if (!p.commutes) return false;
        for (const auto& t : log.triples)
            if (!t.ok()) return false;
    }
    return true;
}

AmalgamRun run(const RunConfig& cfg) {
    if (!cfg.seed) throw Error(ErrorKind::Precondition, "run needs a seed space");
    check_budget(cfg.seed->dim, cfg.dim_budget, "seed space");
    AmalgamRun out;
    out.config = cfg;
    out.stages.push_back(cfg.seed);
    const std::vector<Rational> eps = eps_schedule(cfg);
    if (cfg.stages == 0) return out;

    std::optional<Catalog> catalog;
    try {
        catalog = build_catalog(cfg.max_dim, cfg.grid, cfg.dim_budget);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::BudgetExceeded) throw;
        out.status = "budget_exceeded";
        out.message = std::string("catalog: ") + e.what();
        return out;
    }

    Rational product = 1;
    for (std::size_t n = 0; n < cfg.stages; ++n) {
        const SpacePtr& g = out.stages.back();
        std::optional<GurariiStep> st;
        try {
            st = gurarii_step(g, *catalog, eps[n], cfg);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::BudgetExceeded) throw;
            out.status = "budget_exceeded";
            out.message = "stage " + std::to_string(n + 1) + ": " + e.what();
            break;
        }
        auto next = make_space("G" + std::to_string(n + 1), st->step.space->ball);
        out.links.emplace_back(st->step.link.matrix(), g, next);
        product *= 1 + eps[n];
        st->log.stage = n;
        st->log.eps_product = product;
        out.defect_log.push_back(std::move(st->log));
        out.stages.push_back(std::move(next));
    }

    if (!out.links.empty()) {
        LinearMap composite = out.links.front();
        for (std::size_t k = 1; k < out.links.size(); ++k) composite = compose(out.links[k], composite);
        out.composite_cert = certify(composite);
    }
    return out;
}

}  // namespace polynorm
