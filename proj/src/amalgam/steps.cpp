#include <map>
#include <memory>

#include "polynorm/amalgam.hpp"
#include "polynorm/linalg.hpp"

namespace polynorm {

namespace {

Integer nearest_units(const Rational& x, const Rational& spacing) {
    const Rational u = x / spacing + Rational(1, 2);
    Integer n = numerator(u), d = denominator(u);
    Integer q = n / d;
    if (q * d != n && n < 0) q -= 1;
    return q;
}

void require_same(const NormedSpace& a, const NormedSpace& b, const std::string& what) {
    if (!same_space(a, b)) throw Error(ErrorKind::DomainMismatch, what);
}

void require_surjective_eps_isometry(const LinearMap& m, const Rational& eps, const char* name) {
    if (m.dom()->dim != m.cod()->dim || rank(m.matrix()) != m.cod()->dim)
        throw Error(ErrorKind::NotSurjective, std::string(name) + " is not a bijection");
    if (!certify(m).contractive_eps_isometry(eps))
        throw Error(ErrorKind::Precondition,
                    std::string(name) + " is not a contractive (1+eps)-isometry");
}

// Net member close to s alpha^-1: first the rounding of (1 - eps/2) s alpha^-1,
// which is always a contraction within eps of s alpha^-1, then every
// floor/ceiling choice of the unshrunk matrix.
std::optional<LinearMap> nearby_net_member(const NetSpec& spec, const LinearMap& s,
                                           const LinearMap& alpha, const Rational& eps) {
    const Matrix target = s.matrix() * *inverse(alpha.matrix());
    const std::size_t rows = target.rows(), cols = target.cols();
    auto accept = [&](Matrix m) -> std::optional<LinearMap> {
        LinearMap t(std::move(m), spec.dom, spec.cod);
        if (!in_net(spec, t)) return std::nullopt;
        if (operator_norm(difference(s, compose(t, alpha))) < eps) return t;
        return std::nullopt;
    };
    Matrix shrunk(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            shrunk(i, j) = Rational(nearest_units((1 - eps / 2) * target(i, j), spec.spacing)) * spec.spacing;
    if (auto t = accept(shrunk)) return t;

    const std::size_t n = rows * cols;
    if (n > 16) return std::nullopt;
    for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
        Matrix m(rows, cols);
        for (std::size_t e = 0; e < n; ++e) {
            const Rational u = target(e / cols, e % cols) / spec.spacing;
            Integer fl = numerator(u) / denominator(u);
            if (fl * denominator(u) != numerator(u) && numerator(u) < 0) fl -= 1;
            if (mask & (1UL << e) && fl * denominator(u) != numerator(u)) fl += 1;
            m(e / cols, e % cols) = Rational(fl) * spec.spacing;
        }
        if (auto t = accept(std::move(m))) return t;
    }
    return std::nullopt;
}

}  // namespace

StepResult ud_step(const SpacePtr& g, const std::vector<PushoutPair>& pairs, std::size_t budget,
                   bool sequential) {
    MultiPushoutResult r = sequential ? sequential_multi_pushout(g, pairs, budget)
                                      : multi_pushout(g, pairs, budget);
    if (!certify(r.iota).isometric()) throw Error(ErrorKind::VerificationFailed, "link is not isometric");
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (compose(r.extensions[i], pairs[i].u).matrix() != compose(r.iota, pairs[i].t).matrix())
            throw Error(ErrorKind::VerificationFailed, "extension " + std::to_string(i) + " does not commute");
        if (certify(pairs[i].t).isometric() && !certify(r.extensions[i]).isometric())
            throw Error(ErrorKind::VerificationFailed,
                        "extension " + std::to_string(i) + " of an isometric map is not isometric");
    }
    return {r.po, r.iota, r.extensions};
}

DefectRecord evaluate_defect(const LinearMap& link, const LinearMap& t_prime, const LinearMap& w,
                             const LinearMap& s, const LinearMap& alpha, const LinearMap& beta,
                             const LinearMap& t, const Rational& eps, std::string source) {
    DefectRecord rec;
    rec.source = std::move(source);
    rec.eps = eps;
    rec.w = w.matrix();
    rec.s = s.matrix();
    rec.alpha = alpha.matrix();
    rec.beta = beta.matrix();
    rec.t = t.matrix();
    const LinearMap tb = compose(t_prime, beta);
    rec.t_prime_beta = certify(tb);
    rec.residual = operator_norm(difference(compose(link, s), compose(tb, w)));
    rec.lower_bound = 1 / ((1 + eps) * (1 + eps));
    rec.upper_ok = rec.t_prime_beta.upper <= 1;
    rec.lower_ok = rec.t_prime_beta.empty_domain || rec.t_prime_beta.lower >= rec.lower_bound;
    rec.residual_ok = rec.residual <= eps;
    return rec;
}

DefectRecord measure_aud_defect(const SpacePtr& g, const DefectTriple& tr, const Rational& eps,
                                std::size_t budget) {
    if (eps <= 0) throw Error(ErrorKind::Precondition, "eps must be positive");
    require_same(*tr.w.dom(), *tr.s.dom(), "w and s have different domains");
    require_same(*tr.alpha.dom(), *tr.w.dom(), "alpha does not start at dom w");
    require_same(*tr.beta.dom(), *tr.w.cod(), "beta does not start at cod w");
    require_same(*tr.alpha.cod(), *tr.u.dom(), "alpha does not end at dom u");
    require_same(*tr.beta.cod(), *tr.u.cod(), "beta does not end at cod u");
    require_same(*tr.s.cod(), *g, "s does not map into G");
    if (compose(tr.beta, tr.w).matrix() != compose(tr.u, tr.alpha).matrix())
        throw Error(ErrorKind::SquareNotCommuting, "beta w != u alpha");
    if (!certify(tr.w).isometric()) throw Error(ErrorKind::Precondition, "w is not isometric");
    if (!certify(tr.u).isometric()) throw Error(ErrorKind::Precondition, "u is not isometric");
    if (!certify(tr.s).contractive_eps_isometry(eps))
        throw Error(ErrorKind::Precondition, "s is not a contractive (1+eps)-isometry");
    require_surjective_eps_isometry(tr.alpha, eps, "alpha");
    require_surjective_eps_isometry(tr.beta, eps, "beta");

    const NetSpec spec = net_spec(tr.u.dom(), g, eps);
    auto t = nearby_net_member(spec, tr.s, tr.alpha, eps);
    if (!t) throw Error(ErrorKind::Precondition, "no net member within eps of s alpha^-1");
    MultiPushoutResult r = multi_pushout(g, {{tr.u, *t}}, budget);
    return evaluate_defect(r.iota, r.extensions.front(), tr.w, tr.s, tr.alpha, tr.beta, *t, eps,
                           "measured");
}

StepCandidates select_pairs(const SpacePtr& g, const Catalog& catalog, const Rational& eps,
                            const RunConfig& cfg) {
    std::vector<std::string> sources;
    std::vector<LinearMap> embeddings;
    if (cfg.variant == Variant::Linf) {
        for (const auto& a : catalog.spaces) {
            LinfEmbedding j = linf_embed(a, cfg.dim_budget);
            if (j.m <= a->dim) continue;
            sources.push_back("linf(" + a->label + ")");
            embeddings.push_back(std::move(j.j));
        }
    } else {
        for (std::size_t k = 0; k < catalog.embeddings.size(); ++k) {
            const auto& e = catalog.embeddings[k];
            if (e.map.dom()->dim >= e.map.cod()->dim) continue;
            sources.push_back("catalog[" + std::to_string(k) + "] " + e.map.dom()->label + "->" +
                              e.map.cod()->label);
            embeddings.push_back(e.map);
        }
    }

    // Net members are drawn in enumeration order, shared between embeddings
    // with the same domain.
    struct DomainNet {
        std::unique_ptr<NetEnumerator> en;
        std::vector<LinearMap> members;
        std::size_t vertex_cursor = 0;
    };
    std::map<const NormedSpace*, DomainNet> nets;
    auto member = [&](const SpacePtr& f, std::size_t index) -> std::optional<LinearMap> {
        DomainNet& dn = nets[f.get()];
        if (!dn.en) dn.en = std::make_unique<NetEnumerator>(net_spec(f, g, eps), cfg.net_nodes);
        while (dn.members.size() <= index) {
            std::optional<LinearMap> t;
            if (cfg.variant == Variant::UD && f->dim == 1) {
                // Isometric maps from the line send 1 to a unit vector; ball
                // vertices are the exact ones.
                const auto& verts = g->ball.vertices();
                while (dn.vertex_cursor < verts.size() && !lex_positive(verts[dn.vertex_cursor]))
                    ++dn.vertex_cursor;
                if (dn.vertex_cursor == verts.size()) return std::nullopt;
                const Rational scale = f->norm(Vec{Rational(1)});
                t = LinearMap(Matrix::from_columns(g->dim, {scale * verts[dn.vertex_cursor++]}), f, g);
            } else {
                t = dn.en->next();
                while (t && cfg.variant == Variant::UD && !certify(*t).isometric()) t = dn.en->next();
            }
            if (!t) return std::nullopt;
            dn.members.push_back(std::move(*t));
        }
        return dn.members[index];
    };

    StepCandidates out;
    for (std::size_t k = 0; k < embeddings.size() && out.pairs.size() < cfg.pairs_per_stage; ++k) {
        for (std::size_t m = 0; m < cfg.net_per_embedding && out.pairs.size() < cfg.pairs_per_stage; ++m) {
            auto t = member(embeddings[k].dom(), m);
            if (!t) break;
            out.sources.push_back(sources[k]);
            out.pairs.push_back({embeddings[k], std::move(*t)});
        }
    }
    for (const auto& [key, dn] : nets)
        if (dn.en) out.net_nodes += dn.en->nodes();
    return out;
}

GurariiStep gurarii_step(const SpacePtr& g, const Catalog& catalog, const Rational& eps,
                         const RunConfig& cfg) {
    if (eps <= 0) throw Error(ErrorKind::Precondition, "eps must be positive");
    StepCandidates cand = select_pairs(g, catalog, eps, cfg);
    MultiPushoutResult r = sequential_multi_pushout(g, cand.pairs, cfg.dim_budget);

    StageLog log;
    log.eps = eps;
    log.net_nodes = cand.net_nodes;
    log.link_cert = certify(r.iota);
    if (!log.link_cert.isometric()) throw Error(ErrorKind::VerificationFailed, "link is not isometric");

    for (std::size_t i = 0; i < cand.pairs.size(); ++i) {
        const PushoutPair& p = cand.pairs[i];
        const LinearMap& ext = r.extensions[i];
        PairRecord rec{cand.sources[i], p.u.matrix(), p.t.matrix(), certify(p.t), certify(ext),
                       compose(ext, p.u).matrix() == compose(r.iota, p.t).matrix()};
        if (!rec.commutes)
            throw Error(ErrorKind::VerificationFailed, "extension " + std::to_string(i) + " does not commute");
        if (rec.t_cert.isometric() && !rec.extension_cert.isometric())
            throw Error(ErrorKind::VerificationFailed,
                        "extension " + std::to_string(i) + " of an isometric map is not isometric");

        // Triples with w = u, s = t and alpha, beta = lambda id for lambda = 1
        // and 1/(1+eps); the square commutes and ||s - t alpha|| < eps.
        if (rec.t_cert.contractive_eps_isometry(eps)) {
            for (const Rational& lambda : {Rational(1), 1 / (1 + eps)}) {
                LinearMap alpha = scaled(lambda, LinearMap::identity(p.u.dom()));
                LinearMap beta = scaled(lambda, LinearMap::identity(p.u.cod()));
                if (!(operator_norm(difference(p.t, compose(p.t, alpha))) < eps))
                    throw Error(ErrorKind::VerificationFailed, "triple violates ||s - t alpha|| < eps");
                log.triples.push_back(evaluate_defect(r.iota, ext, p.u, p.t, alpha, beta, p.t, eps,
                                                      "pair " + std::to_string(i) + ", lambda " +
                                                          to_string(lambda)));
            }
        }
        log.pairs.push_back(std::move(rec));
    }
    return {StepResult{r.po, r.iota, r.extensions}, std::move(log)};
}

}  // namespace polynorm
