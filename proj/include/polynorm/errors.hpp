#ifndef POLYNORM_ERRORS_HPP
#define POLYNORM_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace polynorm {

enum class ErrorKind {
    Parse,
    NotSymmetric,
    NotFullDimensional,
    InconsistentRepresentations,
    NotSurjective,
    BudgetExceeded,
    DependentKernel,
    DomainMismatch,
    ShapeMismatch,
    SquareNotCommuting,
    NormTooLarge,
    IndexOutOfRange,
    Precondition,
    LpFailure,
    VerificationFailed,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

/// Largest ambient dimension any polytope operation accepts by default.
inline constexpr std::size_t kDefaultDimBudget = 12;

inline void check_budget(std::size_t dim, std::size_t budget, const char* where) {
    if (dim > budget)
        throw Error(ErrorKind::BudgetExceeded, std::string(where) + ": dimension " +
                                                   std::to_string(dim) + " exceeds budget " +
                                                   std::to_string(budget));
}

}  // namespace polynorm

#endif
