#include "polynorm/amalgam.hpp"
#include "polynorm/lp.hpp"

namespace polynorm {

namespace {

Integer floor_int(const Rational& x) {
    Integer n = numerator(x), d = denominator(x);
    Integer q = n / d;
    if (q * d != n && n < 0) q -= 1;
    return q;
}

Integer ceil_int(const Rational& x) { return -floor_int(-x); }

Rational l1_norm(const Vec& v) {
    Rational s = 0;
    for (const auto& x : v) s += abs(x);
    return s;
}

}  // namespace

NetSpec net_spec(const SpacePtr& dom, const SpacePtr& cod, const Rational& eps) {
    if (eps <= 0) throw Error(ErrorKind::Precondition, "net tolerance must be positive");
    Rational vmax = 0;
    for (const auto& v : dom->ball.vertices()) vmax = std::max(vmax, l1_norm(v));
    Rational esum = 0;
    for (std::size_t i = 0; i < cod->dim; ++i) esum += cod->norm(unit_vec(cod->dim, i));
    const Rational k = vmax * esum;
    NetSpec spec{dom, cod, eps, k == 0 ? eps : eps / k, Matrix(cod->dim, dom->dim)};
    for (std::size_t i = 0; i < cod->dim; ++i) {
        Rational reach = 0;
        for (const auto& x : cod->ball.vertices()) reach = std::max(reach, abs(x[i]));
        for (std::size_t j = 0; j < dom->dim; ++j) {
            const Rational b = reach * dom->norm(unit_vec(dom->dim, j));
            spec.bound(i, j) = Rational(floor_int(b / spec.spacing)) * spec.spacing;
        }
    }
    return spec;
}

bool in_net(const NetSpec& spec, const LinearMap& t) {
    const Matrix& m = t.matrix();
    if (m.rows() != spec.cod->dim || m.cols() != spec.dom->dim) return false;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const Rational units = m(i, j) / spec.spacing;
            if (denominator(units) != 1 || abs(m(i, j)) > spec.bound(i, j)) return false;
        }
    return operator_norm(t) <= 1;
}

NetEnumerator::NetEnumerator(NetSpec spec, std::size_t max_nodes)
    : spec_(std::move(spec)), max_nodes_(max_nodes) {}

NetEnumerator::Frame NetEnumerator::expand(std::size_t depth) {
    if (++nodes_ > max_nodes_)
        throw Error(ErrorKind::BudgetExceeded,
                    "contraction net: more than " + std::to_string(max_nodes_) + " search nodes");
    const std::size_t m = spec_.dom->dim;
    const std::size_t n = spec_.cod->dim;
    const std::size_t total = m * n;
    const std::size_t free_count = total - depth;
    const auto& w = spec_.cod->ball.vertices();

    // Entries depth.. are free; each F vertex v must satisfy t v = W lambda, sum(lambda) <= 1.
    lp::LinearProgram prog;
    const std::size_t x0 = prog.add_variables(free_count, true);
    for (const auto& v : spec_.dom->ball.vertices()) {
        if (!lex_positive(v)) continue;
        const std::size_t l0 = prog.add_variables(w.size());
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<std::pair<std::size_t, Rational>> terms;
            Rational rhs = 0;
            for (std::size_t j = 0; j < m; ++j) {
                if (v[j] == 0) continue;
                const std::size_t e = i * m + j;
                if (e < depth)
                    rhs -= entries_[e] * v[j];
                else
                    terms.emplace_back(x0 + e - depth, v[j]);
            }
            for (std::size_t k = 0; k < w.size(); ++k)
                if (w[k][i] != 0) terms.emplace_back(l0 + k, -w[k][i]);
            prog.add_constraint(std::move(terms), lp::Sense::Equal, rhs);
        }
        std::vector<std::pair<std::size_t, Rational>> sum;
        for (std::size_t k = 0; k < w.size(); ++k) sum.emplace_back(l0 + k, Rational(1));
        prog.add_constraint(std::move(sum), lp::Sense::LessEqual, 1);
    }

    const std::size_t i = depth / m, j = depth % m;
    const Rational& b = spec_.bound(i, j);
    prog.minimize({{x0, Rational(1)}});
    const lp::Solution lo = prog.solve();
    prog.maximize({{x0, Rational(1)}});
    const lp::Solution hi = prog.solve();
    Frame frame;
    if (lo.status != lp::Status::Optimal || hi.status != lp::Status::Optimal) return frame;

    const Integer first = ceil_int(std::max(lo.objective, -b) / spec_.spacing);
    const Integer last = floor_int(std::min(hi.objective, b) / spec_.spacing);
    if (first > last) return frame;
    Integer top = std::max(abs(first), abs(last));
    for (Integer mag = top; mag >= 0; --mag) {
        if (mag >= first && mag <= last) frame.values.push_back(Rational(mag) * spec_.spacing);
        if (mag != 0 && -mag >= first && -mag <= last)
            frame.values.push_back(Rational(-mag) * spec_.spacing);
    }
    return frame;
}

std::optional<LinearMap> NetEnumerator::next() {
    const std::size_t total = spec_.dom->dim * spec_.cod->dim;
    if (!started_) {
        started_ = true;
        if (total == 0) return LinearMap::zero(spec_.dom, spec_.cod);
        stack_.push_back(expand(0));
    }
    while (!stack_.empty()) {
        const std::size_t depth = stack_.size() - 1;
        Frame& f = stack_.back();
        if (f.next == f.values.size()) {
            stack_.pop_back();
            continue;
        }
        entries_.resize(depth);
        entries_.push_back(f.values[f.next++]);
        if (depth + 1 == total) {
            Matrix mat(spec_.cod->dim, spec_.dom->dim);
            for (std::size_t e = 0; e < total; ++e) mat(e / spec_.dom->dim, e % spec_.dom->dim) = entries_[e];
            LinearMap t(std::move(mat), spec_.dom, spec_.cod);
            if (operator_norm(t) > 1)
                throw Error(ErrorKind::VerificationFailed, "net member is not a contraction");
            return t;
        }
        stack_.push_back(expand(depth + 1));
    }
    return std::nullopt;
}

std::vector<LinearMap> contraction_net(const SpacePtr& g, const std::vector<SpacePtr>& domains,
                                       const Rational& eps, std::size_t max_size, std::size_t max_nodes) {
    std::vector<LinearMap> net;
    for (const auto& f : domains) {
        NetEnumerator en(net_spec(f, g, eps), max_nodes);
        while (auto t = en.next()) {
            if (net.size() == max_size)
                throw Error(ErrorKind::BudgetExceeded,
                            "contraction net has more than " + std::to_string(max_size) + " members");
            net.push_back(std::move(*t));
        }
    }
    return net;
}

}  // namespace polynorm
