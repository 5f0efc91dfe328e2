#include <algorithm>

#include "polynorm/linalg.hpp"
#include "polynorm/pushout.hpp"

namespace polynorm {

namespace {

Rational max_of(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace

PushoutResult pushout(const LinearMap& alpha, const LinearMap& beta, std::size_t budget) {
    if (!same_space(*alpha.dom(), *beta.dom()))
        throw Error(ErrorKind::DomainMismatch, "push-out maps have different domains ('" +
                                                   alpha.dom()->label + "' and '" +
                                                   beta.dom()->label + "')");
    const SpacePtr& a = alpha.cod();
    const SpacePtr& b = beta.cod();
    const std::size_t ny = alpha.dom()->dim;
    const std::size_t n = a->dim + b->dim;

    std::vector<Vec> gens;
    gens.reserve(ny);
    for (std::size_t j = 0; j < ny; ++j) {
        Vec g = alpha.matrix().column(j);
        for (const auto& x : beta.matrix().column(j)) g.push_back(-x);
        gens.push_back(std::move(g));
    }
    std::vector<std::string> warnings;
    std::vector<Vec> delta;
    for (auto i : independent_subset(gens, n)) delta.push_back(gens[i]);
    if (delta.size() < ny)
        warnings.push_back("dropped " + std::to_string(ny - delta.size()) +
                           " dependent generator(s) of Delta");
    check_budget(n - delta.size(), budget, "pushout");

    // The sum itself is never converted, so its dimension is not budgeted.
    L1Sum sum = l1_sum(a, b, n);
    Quotient quo = quotient(sum.space, delta, budget);
    auto po = make_space("PO(" + a->label + "," + b->label + ")", quo.space->ball);
    LinearMap q(quo.q.matrix(), sum.space, po);
    LinearMap alpha_prime = compose(q, sum.in_b);
    LinearMap beta_prime = compose(q, sum.in_a);

    if (compose(beta_prime, alpha).matrix() != compose(alpha_prime, beta).matrix())
        throw Error(ErrorKind::VerificationFailed, "push-out square does not commute");
    if (auto n = operator_norm(alpha_prime); n > 1)
        throw Error(ErrorKind::VerificationFailed, "alpha' has norm " + to_string(n));
    if (auto n = operator_norm(beta_prime); n > 1)
        throw Error(ErrorKind::VerificationFailed, "beta' has norm " + to_string(n));

    return {po,         alpha_prime, beta_prime, q, std::move(quo.section), std::move(delta),
            alpha,      beta,        std::move(warnings)};
}

LinearMap universal_map(const PushoutResult& r, const LinearMap& beta2, const LinearMap& alpha2) {
    if (!same_space(*beta2.dom(), *r.beta_prime.dom()) ||
        !same_space(*alpha2.dom(), *r.alpha_prime.dom()))
        throw Error(ErrorKind::DomainMismatch, "cone maps do not start at A and B");
    if (!same_space(*beta2.cod(), *alpha2.cod()))
        throw Error(ErrorKind::DomainMismatch, "cone maps have different codomains");
    if (compose(beta2, r.alpha).matrix() != compose(alpha2, r.beta).matrix())
        throw Error(ErrorKind::SquareNotCommuting, "beta'' alpha != alpha'' beta");

    // gamma((a, b) + Delta) = beta''(a) + alpha''(b), read through the section.
    LinearMap gamma(hconcat(beta2.matrix(), alpha2.matrix()) * r.section, r.po, beta2.cod());
    if (compose(gamma, r.alpha_prime).matrix() != alpha2.matrix() ||
        compose(gamma, r.beta_prime).matrix() != beta2.matrix())
        throw Error(ErrorKind::VerificationFailed, "gamma does not factor the cone");
    const Rational bound = max_of(operator_norm(alpha2), operator_norm(beta2));
    if (operator_norm(gamma) > bound)
        throw Error(ErrorKind::VerificationFailed, "||gamma|| exceeds max(||alpha''||, ||beta''||)");
    return gamma;
}

LemmaReport verify_lemma_isom(const LinearMap& alpha, const LinearMap& beta, std::size_t budget) {
    PushoutResult r = pushout(alpha, beta, budget);
    LemmaReport rep(std::move(r));
    rep.alpha_cert = certify(alpha);
    rep.alpha_prime_cert = certify(rep.result.alpha_prime);
    rep.beta_norm = operator_norm(beta);
    const auto& ac = rep.alpha_cert;
    const auto& pc = rep.alpha_prime_cert;

    rep.b_applies = ac.isometric() && rep.beta_norm <= 1;
    if (rep.b_applies) rep.b_holds = pc.isometric();

    rep.c_applies = ac.empty_domain || ac.lower > 0;
    if (rep.c_applies) rep.c_holds = pc.empty_domain || pc.lower > 0;

    const Matrix& am = alpha.matrix();
    rep.d_applies = am.rows() == am.cols() && rank(am) == am.rows();
    if (rep.d_applies) {
        rep.alpha_norm = ac.upper;
        const std::size_t ny = am.rows();
        if (ny > 0) {
            rep.alpha_inverse_norm = operator_norm(LinearMap(*inverse(am), alpha.cod(), alpha.dom()));
            const Matrix& pm = rep.result.alpha_prime.matrix();
            auto pinv = inverse(pm);
            if (!pinv) throw Error(ErrorKind::VerificationFailed, "alpha' is not invertible");
            rep.alpha_prime_inverse_norm =
                operator_norm(LinearMap(*pinv, rep.result.po, rep.result.alpha_prime.dom()));
            if (rep.alpha_prime_inverse_norm * pc.lower != 1)
                throw Error(ErrorKind::VerificationFailed,
                            "inverse norm disagrees with the lower constant of alpha'");
        }
        rep.bound_alpha = max_of(Rational(1), rep.alpha_norm);
        rep.bound_alpha_inverse = max_of(Rational(1), rep.alpha_inverse_norm);
        rep.bound_alpha_holds = rep.alpha_prime_inverse_norm <= rep.bound_alpha;
        rep.bound_alpha_inverse_holds = rep.alpha_prime_inverse_norm <= rep.bound_alpha_inverse;
    }
    return rep;
}

}  // namespace polynorm
