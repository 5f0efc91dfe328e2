#ifndef POLYNORM_POLYTOPE_HPP
#define POLYNORM_POLYTOPE_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "polynorm/errors.hpp"
#include "polynorm/rational.hpp"

namespace polynorm {

/// Unvalidated polytope description, the shape of the JSON interchange
/// object. At least one of the two representations must be present.
struct PolytopeData {
    std::size_t dim = 0;
    std::optional<std::vector<Vec>> vertices;
    std::optional<std::vector<Vec>> facets;  // body = {x : f(x) <= 1 for every f}
};

/// Full-dimensional origin-symmetric polytope with both representations
/// populated, irredundant, and sorted in descending lexicographic order.
/// Two polytopes are equal exactly when their vertex lists are equal.
///
/// The zero-dimensional polytope {0} is allowed; it is the unit ball of the
/// zero space and has no vertices and no facets.
class Polytope {
  public:
    Polytope() = default;

    static Polytope from_vertices(std::size_t dim, std::vector<Vec> points,
                                  std::size_t budget = kDefaultDimBudget);
    static Polytope from_facets(std::size_t dim, std::vector<Vec> functionals,
                                std::size_t budget = kDefaultDimBudget);

    /// Canonical cross-polytope and cube.
    static Polytope l1_ball(std::size_t dim);
    static Polytope linf_ball(std::size_t dim);

    std::size_t dim() const { return dim_; }
    const std::vector<Vec>& vertices() const { return vertices_; }
    const std::vector<Vec>& facets() const { return facets_; }

    friend bool operator==(const Polytope& a, const Polytope& b) {
        return a.dim_ == b.dim_ && a.vertices_ == b.vertices_;
    }

  private:
    friend Polytope dd_convert(const PolytopeData&, std::size_t);
    friend Polytope l1_join(const Polytope&, const Polytope&, std::size_t);
    Polytope(std::size_t dim, std::vector<Vec> vertices, std::vector<Vec> facets);

    std::size_t dim_ = 0;
    std::vector<Vec> vertices_;
    std::vector<Vec> facets_;
};

/// Double-description conversion: returns the polytope with both
/// representations irredundant. When both are given they must agree.
Polytope dd_convert(const PolytopeData& data, std::size_t budget = kDefaultDimBudget);

/// Vertices of {y : p.y <= 1 for all p in points} (the polar body).
/// Points must be symmetric and span the space.
std::vector<Vec> polar_vertices(std::size_t dim, const std::vector<Vec>& points);

/// Image q(p) of the polytope under a surjective linear map.
Polytope project_polytope(const Polytope& p, const Matrix& q,
                          std::size_t budget = kDefaultDimBudget);

/// Unit ball of the l1-sum: conv((p x {0}) u ({0} x q)).
Polytope l1_join(const Polytope& p, const Polytope& q, std::size_t budget = kDefaultDimBudget);

/// Vertex set of l1_join without building the facet list.
std::vector<Vec> l1_join_vertices(const Polytope& p, const Polytope& q);

/// Minkowski gauge via the facet list: max over f of f(x), and 0 at the origin.
Rational gauge(const Polytope& p, const Vec& x);

/// Minkowski gauge via an exact LP over the vertex list:
/// minimize sum(lambda) subject to sum(lambda_i v_i) = x, lambda >= 0.
Rational gauge_lp(const Polytope& p, const Vec& x);

/// Both routes, checked against each other.
Rational membership_gauge(const Polytope& p, const Vec& x);

/// Sorts descending-lex and removes duplicates.
void canonicalize(std::vector<Vec>& points);

}  // namespace polynorm

#endif
