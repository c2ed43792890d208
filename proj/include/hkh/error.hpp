#pragma once

#include <stdexcept>
#include <string>

namespace hkh {

enum class ErrorKind {
    malformed_word,
    unsupported_backend,
    precondition_violation,
    pattern_mismatch,
    nonlocal_words,
    corrupted_resolution,
    dimension_mismatch,
    parse_error,
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

}  // namespace hkh
