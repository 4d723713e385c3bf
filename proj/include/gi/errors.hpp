#ifndef GI_ERRORS_HPP
#define GI_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gi {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// classify(): the triple sits within tolerance of a case threshold and the
// neighboring cases disagree on admissibility.
struct AmbiguousCaseError : Error {
    explicit AmbiguousCaseError(const std::string& msg) : Error(msg) {}
};

struct ConvergenceError : Error {
    explicit ConvergenceError(const std::string& msg) : Error(msg) {}
};

struct UnsupportedCaseError : Error {
    explicit UnsupportedCaseError(const std::string& msg) : Error(msg) {}
};

struct OnCutError : Error {
    explicit OnCutError(const std::string& msg) : Error(msg) {}
};

// Sheet bookkeeping cannot be established for the given cut layout
// (e.g. a cut set that does not pair up the odd-order zeroes).
struct PathError : Error {
    explicit PathError(const std::string& msg) : Error(msg) {}
};

struct PoleError : Error {
    explicit PoleError(const std::string& msg) : Error(msg) {}
};

struct ResolutionError : Error {
    explicit ResolutionError(const std::string& msg) : Error(msg) {}
};

// lemma_obstruction_test(): the verdict flips between resolution r and 2r.
struct InconclusiveError : Error {
    explicit InconclusiveError(const std::string& msg) : Error(msg) {}
};

struct StiffnessError : Error {
    explicit StiffnessError(const std::string& msg) : Error(msg) {}
};

struct ValidityError : Error {
    explicit ValidityError(const std::string& msg) : Error(msg) {}
};

struct RegionError : Error {
    explicit RegionError(const std::string& msg) : Error(msg) {}
};

struct NotExactBackgroundError : Error {
    explicit NotExactBackgroundError(const std::string& msg) : Error(msg) {}
};

struct TailError : Error {
    explicit TailError(const std::string& msg) : Error(msg) {}
};

} // namespace gi

#endif
