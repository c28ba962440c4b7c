#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qlambert/expr.hpp"

namespace qlambert {

enum class ModeKind { Equal, OddFunction, EvenCoeffEqual, SubseqEquals };

/// Arithmetic target of a SubseqEquals comparison at index n.
struct SubseqTarget {
    enum class Kind { Sigma, WeightedDivisorSum };
    Kind kind = Kind::Sigma;
    unsigned sigma_k = 1;        ///< Sigma: sigma_k(n)
    std::string param;           ///< WeightedDivisorSum: sum_{d|n} d c^d with c = $param
};

struct ComparisonMode {
    ModeKind kind = ModeKind::Equal;
    ExprPtr stride;              ///< SubseqEquals: integer expression, may use int params
    SubseqTarget target;
};

/// Sampling constraints for one free parameter.
struct ParamSpec {
    std::string name;
    bool nonzero = false;
    std::vector<Rational> excluded;
    std::optional<Rational> fixed;
    std::size_t exponent = 0;
    std::vector<std::string> distinct_from;
};

struct IntParamSpec {
    std::string name;
    std::int64_t lo = 0;
    std::int64_t hi = 0;
};

struct IdentityRecord {
    std::string id;
    ExprPtr lhs;
    ExprPtr rhs;                 ///< null for SubseqEquals
    ComparisonMode mode;
    std::vector<ParamSpec> params;
    std::vector<IntParamSpec> int_params;
    std::size_t default_degree = 40;
    std::string citation;
    std::size_t line = 0;        ///< first line of the record in its source
};

/// Malformed catalog text; `what()` names the record id (when known) and line.
class CatalogError : public std::runtime_error {
public:
    CatalogError(const std::string& message, std::string id, std::size_t line);
    [[nodiscard]] const std::string& id() const { return id_; }
    [[nodiscard]] std::size_t line() const { return line_; }

private:
    std::string id_;
    std::size_t line_;
};

std::vector<IdentityRecord> parse_catalog(std::string_view text);
std::vector<IdentityRecord> load_catalog(const std::filesystem::path& path);

/// Text of the catalog compiled into the library.
std::string_view builtin_catalog_text();
const std::vector<IdentityRecord>& builtin_catalog();

const IdentityRecord* find_record(const std::vector<IdentityRecord>& records, std::string_view id);

/// The constraint set could not be met within the rejection budget.
class SamplingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr int kMaxRejects = 1000;

/// Draws p/r with 1 <= r <= 16 and |p| < r for each free parameter,
/// rejecting draws that violate its constraints. Deterministic in (seed, trial).
Bindings sample_params(const IdentityRecord& record, std::uint64_t seed, std::uint64_t trial);

/// "c" or "c,e" as accepted by --bind.
std::string format_param(const Param<Rational>& p);
Param<Rational> parse_param(std::string_view text);

} // namespace qlambert
