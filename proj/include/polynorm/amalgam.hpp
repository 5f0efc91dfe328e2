#ifndef POLYNORM_AMALGAM_HPP
#define POLYNORM_AMALGAM_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "polynorm/pushout.hpp"

namespace polynorm {

/// Isometric embedding between two catalog spaces.
struct CatalogEmbedding {
    std::size_t dom_index;
    std::size_t cod_index;
    LinearMap map;
};

/// Finite stand-in for the dense families of spaces and embeddings.
struct Catalog {
    std::size_t max_dim = 0;
    long grid = 0;
    std::vector<SpacePtr> spaces;
    std::vector<CatalogEmbedding> embeddings;
};

inline constexpr std::size_t kDefaultEmbeddingCandidates = 2'000'000;

/// Spaces: symmetric hulls of lattice points in {-grid..grid}^n, 1 <= n <= max_dim,
/// one per distinct vertex set, ordered by dimension, vertex count, then vertex
/// list. Embeddings: every matrix with entries in {k/2 : |k| <= 2 grid} that
/// certifies (1,1) between two catalog spaces with dim dom <= dim cod, ordered
/// by domain, codomain, then matrix.
Catalog build_catalog(std::size_t max_dim, long grid, std::size_t budget = kDefaultDimBudget,
                      std::size_t max_candidates = kDefaultEmbeddingCandidates);

/// Lattice of candidate matrices for contractions F -> G at tolerance eps.
///
/// With K = max over F's vertices v of ||v||_1 times sum_i ||e_i||_G, the
/// spacing is eps / K, so moving every entry by at most half a step moves the
/// operator by at most eps / 2. Entry (i, j) is bounded by
/// max over G's ball of |x_i| times ||e_j||_F, which every contraction obeys.
struct NetSpec {
    SpacePtr dom;
    SpacePtr cod;
    Rational eps;
    Rational spacing;
    Matrix bound;  // largest lattice value allowed per entry
};

NetSpec net_spec(const SpacePtr& dom, const SpacePtr& cod, const Rational& eps);

/// True when t lies on the lattice, inside the entry bounds, and ||t|| <= 1.
bool in_net(const NetSpec& spec, const LinearMap& t);

inline constexpr std::size_t kDefaultNetNodes = 20'000;

/// Lazy depth-first enumeration of the net. Entries are fixed in row-major
/// order; before each entry the LP range of values still extendable to a
/// contraction is computed, and lattice values in that range are tried by
/// decreasing magnitude, positive before negative. Each range computation
/// counts as a node; exceeding max_nodes throws BudgetExceeded.
class NetEnumerator {
  public:
    explicit NetEnumerator(NetSpec spec, std::size_t max_nodes = kDefaultNetNodes);

    std::optional<LinearMap> next();
    const NetSpec& spec() const { return spec_; }
    std::size_t nodes() const { return nodes_; }

  private:
    struct Frame {
        std::vector<Rational> values;
        std::size_t next = 0;
    };
    Frame expand(std::size_t depth);

    NetSpec spec_;
    std::size_t max_nodes_;
    std::size_t nodes_ = 0;
    std::vector<Frame> stack_;
    std::vector<Rational> entries_;
    bool started_ = false;
};

/// The full net for every domain, in enumeration order per domain.
std::vector<LinearMap> contraction_net(const SpacePtr& g, const std::vector<SpacePtr>& domains,
                                       const Rational& eps, std::size_t max_size = 10'000,
                                       std::size_t max_nodes = kDefaultNetNodes);

/// One exact extension step.
struct StepResult {
    SpacePtr space;
    LinearMap link;
    std::vector<LinearMap> extensions;
};

/// Pushes out all pairs, checks that the link is isometric, that every
/// extension commutes exactly, and that isometric t extend isometrically.
StepResult ud_step(const SpacePtr& g, const std::vector<PushoutPair>& pairs,
                   std::size_t budget = kDefaultDimBudget, bool sequential = false);

/// One logged defect triple: w: A -> B isometric, s: A -> G, alpha: A -> dom u,
/// beta: B -> cod u, and the extension t' of a net member t through u.
struct DefectRecord {
    std::string source;
    Rational eps;
    Matrix w, s, alpha, beta, t;
    IsometryCertificate t_prime_beta;  // certificate of t' beta
    Rational residual;                 // ||link s - t' beta w||
    Rational lower_bound;              // 1 / (1 + eps)^2
    bool upper_ok = false;
    bool lower_ok = false;
    bool residual_ok = false;

    bool ok() const { return upper_ok && lower_ok && residual_ok; }
};

/// Evaluates the defect quantities for an extension already built.
DefectRecord evaluate_defect(const LinearMap& link, const LinearMap& t_prime, const LinearMap& w,
                             const LinearMap& s, const LinearMap& alpha, const LinearMap& beta,
                             const LinearMap& t, const Rational& eps, std::string source);

struct DefectTriple {
    LinearMap w;      // A -> B, isometric
    LinearMap s;      // A -> G, contractive (1+eps)-isometric
    LinearMap u;      // dom u -> cod u, isometric
    LinearMap alpha;  // A -> dom u, surjective contractive (1+eps)-isometry
    LinearMap beta;   // B -> cod u, surjective contractive (1+eps)-isometry
};

/// Validates the square beta w = u alpha, finds a net member t with
/// ||s - t alpha|| < eps, pushes G out along (u, t) and evaluates the record.
DefectRecord measure_aud_defect(const SpacePtr& g, const DefectTriple& triple, const Rational& eps,
                                std::size_t budget = kDefaultDimBudget);

enum class Variant { Gurarii, UD, Linf };

const char* to_string(Variant v);
Variant parse_variant(const std::string& s);

struct RunConfig {
    SpacePtr seed;
    std::size_t max_dim = 2;
    long grid = 1;
    Rational eps = 1;
    std::string schedule = "halving";  // or "explicit"
    std::vector<Rational> explicit_eps;
    std::size_t stages = 0;
    std::size_t dim_budget = 10;
    std::size_t pairs_per_stage = 3;
    std::size_t net_per_embedding = 1;
    std::size_t net_nodes = kDefaultNetNodes;
    Variant variant = Variant::Gurarii;
};

/// eps_n for n < stages: eps / 2^(n+1) under "halving", the list otherwise.
std::vector<Rational> eps_schedule(const RunConfig& cfg);

struct PairRecord {
    std::string u_source;
    Matrix u;
    Matrix t;
    IsometryCertificate t_cert;
    IsometryCertificate extension_cert;
    bool commutes = false;
};

struct StageLog {
    std::size_t stage = 0;  // index of the space the stage starts from
    Rational eps;
    Rational eps_product;  // prod over completed stages of (1 + eps_k)
    std::vector<PairRecord> pairs;
    std::vector<DefectRecord> triples;
    IsometryCertificate link_cert;
    std::size_t net_nodes = 0;
};

/// Embeddings and pairs offered to one step.
struct StepCandidates {
    std::vector<std::string> sources;
    std::vector<PushoutPair> pairs;
    std::size_t net_nodes = 0;
};

/// Gamma_n in priority order (embedding index, then net index), at most
/// net_per_embedding members per embedding, truncated to pairs_per_stage.
StepCandidates select_pairs(const SpacePtr& g, const Catalog& catalog, const Rational& eps,
                            const RunConfig& cfg);

struct GurariiStep {
    StepResult step;
    StageLog log;
};

GurariiStep gurarii_step(const SpacePtr& g, const Catalog& catalog, const Rational& eps,
                         const RunConfig& cfg);

struct AmalgamRun {
    RunConfig config;
    std::vector<SpacePtr> stages;
    std::vector<LinearMap> links;
    std::vector<StageLog> defect_log;
    std::optional<IsometryCertificate> composite_cert;
    std::string status = "complete";  // or "budget_exceeded"
    std::string message;

    bool all_checks_pass() const;
};

/// Runs the configured stages. BudgetExceeded inside a stage discards that
/// stage and stops the run; the completed stages are returned with status
/// "budget_exceeded".
AmalgamRun run(const RunConfig& cfg);

}  // namespace polynorm

#endif
