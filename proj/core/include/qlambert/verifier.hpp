#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qlambert/catalog.hpp"

namespace qlambert {

struct Failure {
    std::size_t trial = 0;
    /// Sampled and integer-family bindings, rendered as in --bind.
    std::map<std::string, std::string> bindings;
    std::optional<std::size_t> k;  ///< first differing exponent; empty on evaluation errors
    std::string lhs;
    std::string rhs;
    std::string error;             ///< evaluation error with expression path
};

struct RecordReport {
    std::string id;
    bool pass = true;
    std::size_t degree = 0;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    std::vector<Failure> failures;
    double millis = 0;
};

struct VerifyOptions {
    std::optional<std::size_t> degree;  ///< overrides each record's default degree
    std::size_t trials = 5;
    std::uint64_t seed = 0;
    unsigned jobs = 1;
};

/// First exponent at which the pair violates the mode, with both sides' values.
struct Mismatch {
    std::size_t k;
    Rational lhs;
    Rational rhs;
};

std::optional<Mismatch> compare(const IdentityRecord& record, const Series& lhs, const Series* rhs,
                                const Bindings& bindings);

RecordReport verify(const IdentityRecord& record, const VerifyOptions& opts);

/// Verifies every record, possibly on several threads; the result is sorted by id.
std::vector<RecordReport> verify_all(const std::vector<IdentityRecord>& records,
                                     const VerifyOptions& opts);

/// JSON array of record reports; millis is included only when `timing` is set.
std::string to_json(const std::vector<RecordReport>& reports, bool timing);
std::string to_csv(const std::vector<RecordReport>& reports);
std::string to_text(const std::vector<RecordReport>& reports, bool timing);

} // namespace qlambert
