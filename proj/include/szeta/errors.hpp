#ifndef SZETA_ERRORS_HPP
#define SZETA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace szeta {

// All library failures are thrown; the CLI maps them to exit codes.
struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// A requested computation exceeds a configured resource bound.
struct bound_exceeded : error {
    explicit bound_exceeded(const std::string& msg) : error(msg) {}
};

// A bounded search (prime selection, discriminant selection) ran out of room.
struct search_exhausted : error {
    explicit search_exhausted(const std::string& msg) : error(msg) {}
};

// Two independent computation routes produced different values.
struct route_disagreement : error {
    explicit route_disagreement(const std::string& msg) : error(msg) {}
};

// Caller violated a documented precondition.
struct precondition_violated : error {
    explicit precondition_violated(const std::string& msg) : error(msg) {}
};

// Intermediate value would not fit the checked integer width.
struct overflow_guard : error {
    explicit overflow_guard(const std::string& msg) : error(msg) {}
};

// Operation is undefined on forms of discriminant zero.
struct degenerate_form : error {
    explicit degenerate_form(const std::string& msg) : error(msg) {}
};

// Malformed input data (CSV rows, JSON certificates, rational literals).
struct parse_error : error {
    explicit parse_error(const std::string& msg) : error(msg) {}
};

// An imported row's declared discriminant does not match its cubic.
struct disc_mismatch : parse_error {
    explicit disc_mismatch(const std::string& msg) : parse_error(msg) {}
};

// Two coefficient series of different lengths were combined.
struct limit_mismatch : precondition_violated {
    explicit limit_mismatch(const std::string& msg) : precondition_violated(msg) {}
};

// A supplied field table does not cover the requested coefficient range.
struct insufficient_data : precondition_violated {
    explicit insufficient_data(const std::string& msg) : precondition_violated(msg) {}
};

// A lookup that is guaranteed to succeed on valid input found nothing.
struct not_found : error {
    explicit not_found(const std::string& msg) : error(msg) {}
};

} // namespace szeta

#endif
