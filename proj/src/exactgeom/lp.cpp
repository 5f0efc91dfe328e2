#include "polynorm/lp.hpp"

#include <optional>

#include "polynorm/errors.hpp"

namespace polynorm::lp {

namespace {

// Tableau rows 0..m-1 are constraints, row m holds reduced costs; the last
// column holds the right-hand side (and minus the objective value in row m).
class Tableau {
  public:
    Tableau(std::size_t m, std::size_t cols) : t_(m + 1, Vec(cols + 1)), basis_(m), m_(m), n_(cols) {}

    Rational& at(std::size_t r, std::size_t c) { return t_[r][c]; }
    Rational& rhs(std::size_t r) { return t_[r][n_]; }
    std::size_t rows() const { return m_; }
    std::size_t cols() const { return n_; }
    std::vector<std::size_t>& basis() { return basis_; }

    void pivot(std::size_t r, std::size_t e) {
        Vec& pr = t_[r];
        const Rational inv = 1 / pr[e];
        for (auto& x : pr)
            if (x != 0) x *= inv;
        for (std::size_t i = 0; i <= m_; ++i) {
            if (i == r || t_[i][e] == 0) continue;
            const Rational f = t_[i][e];
            Vec& row = t_[i];
            for (std::size_t j = 0; j <= n_; ++j)
                if (pr[j] != 0) row[j] -= f * pr[j];
        }
        basis_[r] = e;
    }

    // Bland's rule over columns [0, limit). Returns false when unbounded.
    bool optimize(std::size_t limit) {
        for (;;) {
            std::optional<std::size_t> enter;
            for (std::size_t j = 0; j < limit; ++j)
                if (t_[m_][j] < 0) {
                    enter = j;
                    break;
                }
            if (!enter) return true;
            std::optional<std::size_t> leave;
            Rational best;
            for (std::size_t i = 0; i < m_; ++i) {
                if (t_[i][*enter] <= 0) continue;
                const Rational ratio = t_[i][n_] / t_[i][*enter];
                if (!leave || ratio < best || (ratio == best && basis_[i] < basis_[*leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (!leave) return false;
            pivot(*leave, *enter);
        }
    }

    void drop_row(std::size_t r) {
        t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(r));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
        --m_;
    }

  private:
    std::vector<Vec> t_;
    std::vector<std::size_t> basis_;
    std::size_t m_;
    std::size_t n_;
};

}  // namespace

Solution solve_standard(const Matrix& a, const Vec& b, const Vec& c) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    if (b.size() != m || c.size() != n) throw Error(ErrorKind::ShapeMismatch, "LP shape");

    Tableau tab(m, n + m);
    for (std::size_t i = 0; i < m; ++i) {
        const bool flip = b[i] < 0;
        for (std::size_t j = 0; j < n; ++j) tab.at(i, j) = flip ? Rational(-a(i, j)) : a(i, j);
        tab.rhs(i) = flip ? Rational(-b[i]) : b[i];
        tab.at(i, n + i) = 1;
        tab.basis()[i] = n + i;
    }
    // Phase 1 objective: sum of artificials, priced out against the initial basis.
    for (std::size_t j = 0; j < n; ++j) {
        Rational s;
        for (std::size_t i = 0; i < m; ++i) s += tab.at(i, j);
        tab.at(m, j) = -s;
    }
    {
        Rational s;
        for (std::size_t i = 0; i < m; ++i) s += tab.rhs(i);
        tab.rhs(m) = -s;
    }
    tab.optimize(n + m);
    if (tab.rhs(tab.rows()) != 0) return {Status::Infeasible, {}, {}};

    // Drive zero-level artificials out of the basis; rows that cannot pivot are redundant.
    for (std::size_t i = 0; i < tab.rows();) {
        if (tab.basis()[i] < n) {
            ++i;
            continue;
        }
        std::optional<std::size_t> col;
        for (std::size_t j = 0; j < n; ++j)
            if (tab.at(i, j) != 0) {
                col = j;
                break;
            }
        if (col) {
            tab.pivot(i, *col);
            ++i;
        } else {
            tab.drop_row(i);
        }
    }

    const std::size_t rows = tab.rows();
    for (std::size_t j = 0; j < n + m; ++j) tab.at(rows, j) = j < n ? c[j] : Rational(0);
    tab.rhs(rows) = 0;
    for (std::size_t i = 0; i < rows; ++i) {
        const std::size_t bj = tab.basis()[i];
        if (c[bj] == 0) continue;
        for (std::size_t j = 0; j < n; ++j)
            if (tab.at(i, j) != 0) tab.at(rows, j) -= c[bj] * tab.at(i, j);
        tab.rhs(rows) -= c[bj] * tab.rhs(i);
    }
    if (!tab.optimize(n)) return {Status::Unbounded, {}, {}};

    Solution sol;
    sol.status = Status::Optimal;
    sol.values.assign(n, Rational(0));
    for (std::size_t i = 0; i < rows; ++i) sol.values[tab.basis()[i]] = tab.rhs(i);
    sol.objective = -tab.rhs(rows);
    return sol;
}

std::size_t LinearProgram::add_variable(bool free) {
    free_.push_back(free);
    return free_.size() - 1;
}

std::size_t LinearProgram::add_variables(std::size_t count, bool free) {
    const std::size_t first = free_.size();
    free_.insert(free_.end(), count, free);
    return first;
}

void LinearProgram::add_constraint(std::vector<std::pair<std::size_t, Rational>> terms, Sense sense,
                                   Rational rhs) {
    for (const auto& [idx, _] : terms)
        if (idx >= free_.size()) throw Error(ErrorKind::IndexOutOfRange, "LP variable index");
    rows_.push_back({std::move(terms), sense, std::move(rhs)});
}

void LinearProgram::minimize(std::vector<std::pair<std::size_t, Rational>> terms) {
    objective_ = std::move(terms);
    maximize_ = false;
}

void LinearProgram::maximize(std::vector<std::pair<std::size_t, Rational>> terms) {
    objective_ = std::move(terms);
    maximize_ = true;
}

Solution LinearProgram::solve() const {
    // Column layout: one column per variable, a second one for the negative
    // part of each free variable, then one slack per inequality.
    std::vector<std::size_t> neg_col(free_.size(), 0);
    std::size_t cols = free_.size();
    for (std::size_t v = 0; v < free_.size(); ++v)
        if (free_[v]) neg_col[v] = cols++;
    std::vector<std::size_t> slack_col(rows_.size(), 0);
    for (std::size_t r = 0; r < rows_.size(); ++r)
        if (rows_[r].sense != Sense::Equal) slack_col[r] = cols++;

    Matrix a(rows_.size(), cols);
    Vec b(rows_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        for (const auto& [v, coef] : rows_[r].terms) {
            a(r, v) += coef;
            if (free_[v]) a(r, neg_col[v]) -= coef;
        }
        if (rows_[r].sense == Sense::LessEqual) a(r, slack_col[r]) = 1;
        if (rows_[r].sense == Sense::GreaterEqual) a(r, slack_col[r]) = -1;
        b[r] = rows_[r].rhs;
    }
    Vec c(cols);
    for (const auto& [v, coef] : objective_) {
        const Rational w = maximize_ ? Rational(-coef) : coef;
        c[v] += w;
        if (free_[v]) c[neg_col[v]] -= w;
    }

    Solution raw = solve_standard(a, b, c);
    if (raw.status != Status::Optimal) return raw;
    Solution sol;
    sol.status = Status::Optimal;
    sol.objective = maximize_ ? Rational(-raw.objective) : raw.objective;
    sol.values.resize(free_.size());
    for (std::size_t v = 0; v < free_.size(); ++v)
        sol.values[v] = free_[v] ? Rational(raw.values[v] - raw.values[neg_col[v]]) : raw.values[v];
    return sol;
}

}  // namespace polynorm::lp
