#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace eic {

// Error category maps 1:1 onto CLI exit codes: crypto -> 3, format/IO -> 4.
enum class ErrorCategory { crypto, format };

// Every failure carries a stable machine-readable kind ("modulus-too-small",
// "container-format", ...) plus a human-readable detail string.
class Error : public std::runtime_error {
public:
    Error(ErrorCategory category, std::string kind, const std::string& detail)
        : std::runtime_error(kind + ": " + detail),
          category_(category),
          kind_(std::move(kind)) {}

    ErrorCategory category() const noexcept { return category_; }
    const std::string& kind() const noexcept { return kind_; }

private:
    ErrorCategory category_;
    std::string kind_;
};

class CryptoError : public Error {
public:
    CryptoError(std::string kind, const std::string& detail)
        : Error(ErrorCategory::crypto, std::move(kind), detail) {}
};

class FormatError : public Error {
public:
    FormatError(std::string kind, const std::string& detail)
        : Error(ErrorCategory::format, std::move(kind), detail) {}
};

}  // namespace eic
