#ifndef POLYNORM_LP_HPP
#define POLYNORM_LP_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "polynorm/rational.hpp"

namespace polynorm::lp {

enum class Status { Optimal, Infeasible, Unbounded };

enum class Sense { LessEqual, Equal, GreaterEqual };

struct Solution {
    Status status = Status::Infeasible;
    Rational objective;
    Vec values;  // one entry per declared variable
};

/// Exact linear program over rationals, solved by a two-phase dense-tableau
/// simplex with Bland's rule (terminates on degenerate problems).
///
/// The tableau has one row per constraint, so formulations with few
/// constraints and many columns are the cheap ones.
class LinearProgram {
  public:
    /// Adds a variable; free variables are split internally. Returns its index.
    std::size_t add_variable(bool free = false);
    std::size_t add_variables(std::size_t count, bool free = false);
    std::size_t num_variables() const { return free_.size(); }

    /// Sparse constraint sum coeff_i * x_{index_i} (sense) rhs.
    void add_constraint(std::vector<std::pair<std::size_t, Rational>> terms, Sense sense,
                        Rational rhs);

    void minimize(std::vector<std::pair<std::size_t, Rational>> terms);
    void maximize(std::vector<std::pair<std::size_t, Rational>> terms);

    Solution solve() const;

  private:
    struct Row {
        std::vector<std::pair<std::size_t, Rational>> terms;
        Sense sense;
        Rational rhs;
    };
    std::vector<bool> free_;
    std::vector<Row> rows_;
    std::vector<std::pair<std::size_t, Rational>> objective_;
    bool maximize_ = false;
};

/// Standard form: minimize c.x subject to A x = b, x >= 0.
Solution solve_standard(const Matrix& a, const Vec& b, const Vec& c);

}  // namespace polynorm::lp

#endif
