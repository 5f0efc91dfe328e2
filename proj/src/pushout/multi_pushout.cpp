#include "polynorm/lp.hpp"
#include "polynorm/pushout.hpp"

namespace polynorm {

namespace {

struct L1Family {
    SpacePtr space;
    std::vector<Matrix> injections;
};

// l1(parts) with block injections. Only the vertex and facet lists are
// concatenated here; nothing is converted.
L1Family l1_family(const std::vector<SpacePtr>& parts) {
    std::size_t total = 0;
    for (const auto& p : parts) total += p->dim;
    Polytope ball = parts.front()->ball;
    std::string label = "l1(" + parts.front()->label;
    for (std::size_t k = 1; k < parts.size(); ++k) {
        ball = l1_join(ball, parts[k]->ball, total);
        label += "," + parts[k]->label;
    }
    L1Family fam{make_space(label + ")", std::move(ball)), {}};
    std::size_t offset = 0;
    for (const auto& p : parts) {
        Matrix inj(total, p->dim);
        for (std::size_t i = 0; i < p->dim; ++i) inj(offset + i, i) = 1;
        fam.injections.push_back(std::move(inj));
        offset += p->dim;
    }
    return fam;
}

void validate_pair(const SpacePtr& e, const PushoutPair& p, std::size_t index) {
    const std::string where = "pair " + std::to_string(index) + ": ";
    if (!same_space(*p.u.dom(), *p.t.dom()))
        throw Error(ErrorKind::DomainMismatch, where + "u and t have different domains");
    if (!same_space(*p.t.cod(), *e))
        throw Error(ErrorKind::DomainMismatch, where + "t does not map into E");
    if (auto c = certify(p.u); !c.isometric())
        throw Error(ErrorKind::Precondition, where + "u is not isometric (constants " +
                                                 to_string(c.lower) + ", " + to_string(c.upper) + ")");
    if (auto n = operator_norm(p.t); n > 1)
        throw Error(ErrorKind::NormTooLarge, where + "||t|| = " + to_string(n));
}

}  // namespace

MultiPushoutResult multi_pushout(const SpacePtr& e, const std::vector<PushoutPair>& pairs,
                                 std::size_t budget) {
    for (std::size_t i = 0; i < pairs.size(); ++i) validate_pair(e, pairs[i], i);
    if (pairs.empty()) return {e, LinearMap::identity(e), {}, {}, std::nullopt};

    std::vector<SpacePtr> doms, cods;
    for (const auto& p : pairs) {
        doms.push_back(p.u.dom());
        cods.push_back(p.u.cod());
    }
    std::vector<Matrix> injections;
    std::optional<LinearMap> alpha, beta;
    if (pairs.size() == 1) {
        alpha = pairs[0].u;
        beta = pairs[0].t;
        injections.push_back(Matrix::identity(cods[0]->dim));
    } else {
        L1Family ys = l1_family(doms);
        L1Family bs = l1_family(cods);
        Matrix u = pairs[0].u.matrix();
        Matrix t = pairs[0].t.matrix();
        for (std::size_t k = 1; k < pairs.size(); ++k) {
            u = block_diag(u, pairs[k].u.matrix());
            t = hconcat(t, pairs[k].t.matrix());
        }
        alpha = LinearMap(std::move(u), ys.space, bs.space);
        beta = LinearMap(std::move(t), ys.space, e);
        injections = std::move(bs.injections);
    }

    PushoutResult r = pushout(*alpha, *beta, budget);
    MultiPushoutResult out{r.po, r.alpha_prime, {}, pairs, std::nullopt};
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        LinearMap ext(r.beta_prime.matrix() * injections[i], cods[i], r.po);
        if (compose(ext, pairs[i].u).matrix() != compose(out.iota, pairs[i].t).matrix())
            throw Error(ErrorKind::VerificationFailed,
                        "extension " + std::to_string(i) + " does not commute");
        out.extensions.push_back(std::move(ext));
    }
    out.pushout = std::move(r);
    return out;
}

MultiPushoutResult sequential_multi_pushout(const SpacePtr& e, const std::vector<PushoutPair>& pairs,
                                            std::size_t budget) {
    MultiPushoutResult cur{e, LinearMap::identity(e), {}, {}, std::nullopt};
    for (const auto& p : pairs) {
        MultiPushoutResult step = multi_pushout(cur.po, {{p.u, compose(cur.iota, p.t)}}, budget);
        for (auto& ext : cur.extensions) ext = compose(step.iota, ext);
        cur.extensions.push_back(step.extensions.front());
        cur.iota = compose(step.iota, cur.iota);
        cur.po = step.po;
    }
    cur.pairs = pairs;
    return cur;
}

LinearMap comparison_map(const MultiPushoutResult& simultaneous, const MultiPushoutResult& other) {
    if (simultaneous.pairs.size() != other.extensions.size())
        throw Error(ErrorKind::ShapeMismatch, "results solve different extension problems");
    if (!simultaneous.pushout) return other.iota;
    const PushoutResult& r = *simultaneous.pushout;
    Matrix beta2(other.po->dim, 0);
    for (const auto& ext : other.extensions) beta2 = hconcat(beta2, ext.matrix());
    return universal_map(r, LinearMap(std::move(beta2), r.beta_prime.dom(), other.po), other.iota);
}

ExtensionNormCheck extension_norm_values(const MultiPushoutResult& r, std::size_t i, const Vec& b) {
    if (i >= r.pairs.size())
        throw Error(ErrorKind::IndexOutOfRange, "pair index " + std::to_string(i) + " of " +
                                                    std::to_string(r.pairs.size()));
    const LinearMap& u = r.pairs[i].u;
    const LinearMap& t = r.pairs[i].t;
    const NormedSpace& bsp = *u.cod();
    const NormedSpace& esp = *t.cod();
    if (b.size() != bsp.dim) throw Error(ErrorKind::ShapeMismatch, "vector is not in cod u");

    ExtensionNormCheck out;
    out.hull = r.po->norm(r.extensions[i](b));
    out.b_norm = bsp.norm(b);
    out.isometric_pair = certify(u).isometric() && certify(t).isometric();

    // minimize sum(lambda) + sum(mu) s.t. t a = W_E lambda, b - u a = W_B mu
    lp::LinearProgram prog;
    const auto& we = esp.ball.vertices();
    const auto& wb = bsp.ball.vertices();
    const std::size_t a0 = prog.add_variables(u.dom()->dim, true);
    const std::size_t l0 = prog.add_variables(we.size());
    const std::size_t m0 = prog.add_variables(wb.size());
    for (std::size_t k = 0; k < esp.dim; ++k) {
        std::vector<std::pair<std::size_t, Rational>> terms;
        for (std::size_t j = 0; j < u.dom()->dim; ++j)
            if (t.matrix()(k, j) != 0) terms.emplace_back(a0 + j, t.matrix()(k, j));
        for (std::size_t j = 0; j < we.size(); ++j)
            if (we[j][k] != 0) terms.emplace_back(l0 + j, -we[j][k]);
        prog.add_constraint(std::move(terms), lp::Sense::Equal, 0);
    }
    for (std::size_t k = 0; k < bsp.dim; ++k) {
        std::vector<std::pair<std::size_t, Rational>> terms;
        for (std::size_t j = 0; j < u.dom()->dim; ++j)
            if (u.matrix()(k, j) != 0) terms.emplace_back(a0 + j, u.matrix()(k, j));
        for (std::size_t j = 0; j < wb.size(); ++j)
            if (wb[j][k] != 0) terms.emplace_back(m0 + j, wb[j][k]);
        prog.add_constraint(std::move(terms), lp::Sense::Equal, b[k]);
    }
    std::vector<std::pair<std::size_t, Rational>> obj;
    for (std::size_t j = 0; j < we.size() + wb.size(); ++j) obj.emplace_back(l0 + j, Rational(1));
    prog.minimize(std::move(obj));
    const lp::Solution sol = prog.solve();
    if (sol.status != lp::Status::Optimal)
        throw Error(ErrorKind::LpFailure, "extension norm LP not optimal");
    out.lp = sol.objective;
    return out;
}

Rational extension_norm_check(const MultiPushoutResult& r, std::size_t i, const Vec& b) {
    ExtensionNormCheck c = extension_norm_values(r, i, b);
    if (c.hull != c.lp)
        throw Error(ErrorKind::VerificationFailed, "extension norm routes disagree at " + to_string(b) +
                                                       ": " + to_string(c.hull) + " vs " +
                                                       to_string(c.lp));
    if (c.isometric_pair && c.hull != c.b_norm)
        throw Error(ErrorKind::VerificationFailed,
                    "extension of an isometric pair changes the norm of " + to_string(b));
    return c.hull;
}

}  // namespace polynorm
