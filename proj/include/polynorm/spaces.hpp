#ifndef POLYNORM_SPACES_HPP
#define POLYNORM_SPACES_HPP

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "polynorm/errors.hpp"
#include "polynorm/polytope.hpp"
#include "polynorm/rational.hpp"

namespace polynorm {

/// Finite-dimensional space whose norm is the gauge of a polyhedral ball.
struct NormedSpace {
    std::size_t dim = 0;
    Polytope ball;
    std::string label;

    Rational norm(const Vec& x) const { return gauge(ball, x); }
};

using SpacePtr = std::shared_ptr<const NormedSpace>;

/// Validates the vertex list (symmetric, spanning) and runs dd_convert.
/// Asymmetric input is rejected, never symmetrized.
SpacePtr make_space(std::string label, std::size_t dim, std::vector<Vec> vertices,
                    std::size_t budget = kDefaultDimBudget);
SpacePtr make_space(std::string label, Polytope ball);

SpacePtr zero_space();
SpacePtr linf_space(std::size_t m, std::size_t budget = kDefaultDimBudget);
SpacePtr l1_space(std::size_t m, std::size_t budget = kDefaultDimBudget);

/// Same dimension and same unit ball (labels are ignored).
bool same_space(const NormedSpace& a, const NormedSpace& b);

/// Rational matrix with explicit domain and codomain (cod.dim x dom.dim).
class LinearMap {
  public:
    LinearMap(Matrix matrix, SpacePtr dom, SpacePtr cod);

    const Matrix& matrix() const { return matrix_; }
    const SpacePtr& dom() const { return dom_; }
    const SpacePtr& cod() const { return cod_; }

    Vec operator()(const Vec& x) const { return matrix_ * x; }

    static LinearMap identity(SpacePtr space);
    static LinearMap zero(SpacePtr dom, SpacePtr cod);

  private:
    Matrix matrix_;
    SpacePtr dom_;
    SpacePtr cod_;
};

/// outer o inner; requires inner.cod and outer.dom to be the same space.
LinearMap compose(const LinearMap& outer, const LinearMap& inner);
/// a - b for maps with the same domain and codomain.
LinearMap difference(const LinearMap& a, const LinearMap& b);
LinearMap scaled(const Rational& s, const LinearMap& a);

/// Upper and lower norm constants of a map, with points attaining each.
///
/// A map is an isometric embedding when lower = upper = 1, and a contractive
/// (1+eps)-isometric embedding when upper <= 1 and lower >= 1/(1+eps).
/// Maps out of the zero space are vacuously isometric.
struct IsometryCertificate {
    Rational upper;
    Rational lower;
    Vec upper_witness;
    Vec lower_witness;
    bool empty_domain = false;

    bool isometric() const { return empty_domain || (upper == 1 && lower == 1); }
    bool contractive_eps_isometry(const Rational& eps) const {
        return empty_domain || (upper <= 1 && lower * (1 + eps) >= 1);
    }
};

/// max over the domain ball's vertices of the codomain norm.
Rational operator_norm(const LinearMap& t);

/// min over the domain unit sphere of the codomain norm; zero iff t has a kernel.
Rational lower_isometry_constant(const LinearMap& t);

IsometryCertificate certify(const LinearMap& t);

struct L1Sum {
    SpacePtr space;
    LinearMap in_a;
    LinearMap in_b;
};

/// A (+)_1 B with its canonical isometric injections.
L1Sum l1_sum(const SpacePtr& a, const SpacePtr& b, std::size_t budget = kDefaultDimBudget);

/// Quotient coordinates modulo a kernel. Coordinates of X/K are the standard
/// basis vectors that are not pivot columns of the row-reduced kernel basis.
struct QuotientCoordinates {
    Matrix q;        // (n-k) x n, kills the kernel
    Matrix section;  // n x (n-k), q * section = I
    std::vector<std::size_t> complement;
};

QuotientCoordinates quotient_coordinates(std::size_t n, const std::vector<Vec>& kernel_basis);

struct Quotient {
    SpacePtr space;
    LinearMap q;
    Matrix section;
    std::vector<std::size_t> complement;
};

/// X / span(kernel_basis). The ball is the image of X's ball under q.
Quotient quotient(const SpacePtr& x, const std::vector<Vec>& kernel_basis,
                  std::size_t budget = kDefaultDimBudget);

/// min over k in span(kernel_basis) of ||x + k||_X, by exact LP over X's vertices.
Rational quotient_norm_lp(const NormedSpace& x, const std::vector<Vec>& kernel_basis, const Vec& v);

struct LinfEmbedding {
    std::size_t m;
    LinearMap j;
};

/// x -> (f_1(x), ..., f_m(x)) over the lexicographically positive facet of
/// each +- pair, into the sup-norm space of dimension m.
LinfEmbedding linf_embed(const SpacePtr& a, std::size_t budget = kDefaultDimBudget);

struct Subspace {
    SpacePtr space;
    LinearMap inclusion;
};

/// span(basis) with the restricted norm; coordinates are basis coefficients.
Subspace subspace(const SpacePtr& x, const std::vector<Vec>& basis, std::string label = {},
                  std::size_t budget = kDefaultDimBudget);

/// ||g||_{X*} = max over ball vertices of |g(v)|.
Rational dual_norm(const NormedSpace& x, const Vec& g);

/// Norm of the functional on span(basis) taking values[j] at basis[j].
Rational restricted_dual_norm(const NormedSpace& x, const std::vector<Vec>& basis, const Vec& values);

/// Norm-preserving extension of a functional given on span(basis). Among all
/// optimal extensions the lexicographically smallest is returned.
Vec hahn_banach_extend(const NormedSpace& x, const std::vector<Vec>& basis, const Vec& values);

/// Extends t: A -> l_inf^m through the inclusion A -> X, coordinate by
/// coordinate, with the same operator norm.
LinearMap extend_operator_linf(const LinearMap& t, const LinearMap& inclusion);

}  // namespace polynorm

#endif
