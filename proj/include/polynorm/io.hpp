#ifndef POLYNORM_IO_HPP
#define POLYNORM_IO_HPP

#include <filesystem>
#include <functional>
#include <map>
#include <string>

#include <json.hpp>

#include "polynorm/amalgam.hpp"
#include "polynorm/pushout.hpp"
#include "polynorm/spaces.hpp"

namespace polynorm::io {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Rationals travel as "p/q" strings; integers may also be plain JSON integers.
Json to_json(const Rational& r);
Json to_json(const Vec& v);
Json to_json(const Matrix& m);
Rational rational_from_json(const Json& j, const std::string& path);
Vec vec_from_json(const Json& j, const std::string& path);
/// rows x cols matrix; an empty row list is accepted when rows == 0.
Matrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols, const std::string& path);

Json to_json(const Polytope& p);
PolytopeData polytope_data_from_json(const Json& j, const std::string& path);

/// {"label", "dim", "vertices", "facets"}.
Json to_json(const NormedSpace& s);
SpacePtr space_from_json(const Json& j, std::size_t budget, const std::string& path = "space");

/// Hex SHA-256 of the space's dimension and canonical vertex list.
std::string content_hash(const NormedSpace& s);

/// {"label", "hash"} reference used inside reports.
Json space_ref(const NormedSpace& s);

/// Looks spaces up by label: built-ins (zero, R, linfN, l1_N), then registered ones.
class SpaceResolver {
  public:
    explicit SpaceResolver(std::size_t budget = kDefaultDimBudget) : budget_(budget) {}

    /// Registers a space; a second space under the same label is a Parse error.
    void add(const SpacePtr& s);
    /// Loads every *.json file of dir/spaces, in sorted file-name order.
    void load_workspace(const std::filesystem::path& dir);

    SpacePtr resolve(const std::string& label) const;
    /// A label string, a {"label", "hash"} reference, or an inline space object.
    SpacePtr resolve(const Json& j, const std::string& path) const;

    std::size_t budget() const { return budget_; }

  private:
    std::size_t budget_;
    std::map<std::string, SpacePtr> spaces_;
};

/// {"dom": ref, "cod": ref, "matrix": rows}.
Json to_json(const LinearMap& m);
LinearMap map_from_json(const Json& j, const SpaceResolver& spaces, const std::string& path = "map");

Json to_json(const IsometryCertificate& c);
Json to_json(const PushoutResult& r);
Json to_json(const LemmaReport& r);
Json to_json(const MultiPushoutResult& r);

Json to_json(const RunConfig& cfg);
RunConfig config_from_json(const Json& j, const SpaceResolver& spaces);

Json to_json(const DefectRecord& d);
Json to_json(const StageLog& log);
/// Report with stable field order: config, status, stages, links, defect_log, composite.
Json to_json(const AmalgamRun& run);

/// Rational formatting for human-readable reports. JSON output is always exact.
struct NumberFormat {
    bool decimal = false;  // six-digit approximations, display only
    std::string operator()(const Rational& r) const;
};

/// "(upper,lower)".
std::string format_certificate(const IsometryCertificate& c, const NumberFormat& fmt);

/// Table of stage, dim, eps, worst residual, worst lower constant and checks.
std::string amalgam_summary(const AmalgamRun& run, const NumberFormat& fmt);

/// Writes config.json, run.json and summary.txt into dir while holding
/// dir/.lock; a lock left by another writer is a Precondition error.
void write_run_directory(const std::filesystem::path& dir, const AmalgamRun& run, const NumberFormat& fmt);

/// Parses text, turning syntax errors into Parse errors with line and column.
Json parse_json(const std::string& text, const std::string& source);
Json read_json_file(const std::filesystem::path& file);
/// Pretty-printed with two-space indent and a trailing newline.
void write_json_file(const std::filesystem::path& file, const Json& j);

}  // namespace polynorm::io

#endif
