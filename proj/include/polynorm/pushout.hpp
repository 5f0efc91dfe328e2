#ifndef POLYNORM_PUSHOUT_HPP
#define POLYNORM_PUSHOUT_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polynorm/spaces.hpp"

namespace polynorm {

/// PO = (A (+)_1 B) / Delta for alpha: Y -> A and beta: Y -> B, where
/// Delta = span{(alpha y, -beta y)}.
struct PushoutResult {
    SpacePtr po;
    LinearMap alpha_prime;  // B -> PO, b |-> q(0, b)
    LinearMap beta_prime;   // A -> PO, a |-> q(a, 0)
    LinearMap q;            // A (+)_1 B -> PO
    Matrix section;         // right inverse of q
    std::vector<Vec> delta_basis;
    LinearMap alpha;
    LinearMap beta;
    std::vector<std::string> warnings;
};

/// Builds the push-out and checks beta' alpha = alpha' beta and that both
/// induced maps are contractive; a failed check throws VerificationFailed.
PushoutResult pushout(const LinearMap& alpha, const LinearMap& beta,
                      std::size_t budget = kDefaultDimBudget);

/// The unique gamma: PO -> C with gamma alpha' = alpha2 and gamma beta' = beta2.
/// Requires beta2 alpha = alpha2 beta; the norm bound
/// ||gamma|| <= max(||alpha2||, ||beta2||) is verified.
LinearMap universal_map(const PushoutResult& r, const LinearMap& beta2, const LinearMap& alpha2);

/// Checks on the induced map alpha' for one push-out square. Items b and c
/// are implications that must hold; item d is reported against two bounds.
struct LemmaReport {
    explicit LemmaReport(PushoutResult r) : result(std::move(r)) {}

    PushoutResult result;
    IsometryCertificate alpha_cert;
    IsometryCertificate alpha_prime_cert;
    Rational beta_norm;

    bool b_applies = false;  // alpha isometric and ||beta|| <= 1
    bool b_holds = true;     // then alpha' certifies (1,1)
    bool c_applies = false;  // alpha has positive lower constant
    bool c_holds = true;     // then so does alpha'

    bool d_applies = false;  // alpha invertible
    Rational alpha_norm;
    Rational alpha_inverse_norm;
    Rational alpha_prime_inverse_norm;
    Rational bound_alpha;          // max(1, ||alpha||)
    Rational bound_alpha_inverse;  // max(1, ||alpha^-1||)
    bool bound_alpha_holds = true;
    bool bound_alpha_inverse_holds = true;

    bool asserted_items_hold() const { return b_holds && c_holds; }
};

LemmaReport verify_lemma_isom(const LinearMap& alpha, const LinearMap& beta,
                              std::size_t budget = kDefaultDimBudget);

/// One element of Gamma: an isometric embedding u: Y -> B and a contraction
/// t: Y -> E with the same domain.
struct PushoutPair {
    LinearMap u;
    LinearMap t;
};

struct MultiPushoutResult {
    SpacePtr po;
    LinearMap iota;                     // E -> PO
    std::vector<LinearMap> extensions;  // cod u_i -> PO, extensions[i] u_i = iota t_i
    std::vector<PushoutPair> pairs;
    std::optional<PushoutResult> pushout;  // the single push-out, when one was formed
};

/// All pairs at once: push out (+)u_i : l1(dom u_i) -> l1(cod u_i) against
/// sum t_i : l1(dom u_i) -> E.
MultiPushoutResult multi_pushout(const SpacePtr& e, const std::vector<PushoutPair>& pairs,
                                 std::size_t budget = kDefaultDimBudget);

/// One pair at a time, each t pushed forward along the links built so far.
/// The result's iota is the composite link and its extensions are pushed
/// forward to the final space.
MultiPushoutResult sequential_multi_pushout(const SpacePtr& e, const std::vector<PushoutPair>& pairs,
                                            std::size_t budget = kDefaultDimBudget);

/// The map from the simultaneous push-out to another solution of the same
/// extension problem given by the universal property.
LinearMap comparison_map(const MultiPushoutResult& simultaneous, const MultiPushoutResult& other);

/// ||extensions[i](b)|| computed from the PO ball and from the LP
///   inf over a of ||t_i(a)||_E + ||b - u_i(a)||_B.
struct ExtensionNormCheck {
    Rational hull;
    Rational lp;
    Rational b_norm;
    bool isometric_pair = false;
};

ExtensionNormCheck extension_norm_values(const MultiPushoutResult& r, std::size_t i, const Vec& b);

/// Returns the common value; throws VerificationFailed if the routes differ, or
/// if the pair is isometric and the value is not ||b||.
Rational extension_norm_check(const MultiPushoutResult& r, std::size_t i, const Vec& b);

}  // namespace polynorm

#endif
