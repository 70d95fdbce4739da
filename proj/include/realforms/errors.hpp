#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace realforms {

// All library failures carry a stable machine-readable code next to the
// human message, so callers (and tests) can dispatch without string-matching
// prose.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

namespace errc {
inline constexpr const char* division_by_zero = "DivisionByZero";
inline constexpr const char* non_invertible_laurent = "NonInvertibleLaurentElement";
inline constexpr const char* field_mismatch = "FieldMismatch";
inline constexpr const char* zero_element = "ZeroElement";
inline constexpr const char* ordering_field_mismatch = "OrderingFieldMismatch";
inline constexpr const char* not_laurent_field = "NotLaurentField";
inline constexpr const char* not_an_extension = "NotAnExtension";
inline constexpr const char* undecidable_representation = "UndecidableRepresentation";
inline constexpr const char* dimension_mismatch = "DimensionMismatch";
inline constexpr const char* non_invertible = "NonInvertible";
inline constexpr const char* non_invertible_u = "NonInvertibleU";
inline constexpr const char* precondition_failed = "PreconditionFailed";
inline constexpr const char* not_split_by_l = "NotSplitByL";
inline constexpr const char* non_divisible = "NonDivisible";
inline constexpr const char* zero_scalar = "ZeroScalar";
inline constexpr const char* invalid_construction = "InvalidConstruction";
inline constexpr const char* parse_error = "ParseError";
inline constexpr const char* unknown_scenario = "UnknownScenario";
inline constexpr const char* internal_unknown_verdict = "InternalUnknownVerdict";
}  // namespace errc

[[noreturn]] inline void raise(const char* code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace realforms
