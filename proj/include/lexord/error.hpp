#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lexord {

enum class ErrorKind {
    Syntax,
    InvalidGrammar,
    InvalidWord,
    EpsilonInLanguage,
    EmptyLanguage,
    NotNormalized,
    NotPrefixLanguage,
    WordNotInLanguage,
    OrderViolation,
    InvalidTerm,
    InvalidAddress,
    Io,
};

inline std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::Syntax: return "syntax error";
    case ErrorKind::InvalidGrammar: return "invalid grammar";
    case ErrorKind::InvalidWord: return "invalid word";
    case ErrorKind::EpsilonInLanguage: return "EpsilonInLanguage";
    case ErrorKind::EmptyLanguage: return "EmptyLanguage";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::NotPrefixLanguage: return "NotPrefixLanguage";
    case ErrorKind::WordNotInLanguage: return "WordNotInLanguage";
    case ErrorKind::OrderViolation: return "OrderViolation";
    case ErrorKind::InvalidTerm: return "invalid term";
    case ErrorKind::InvalidAddress: return "invalid address";
    case ErrorKind::Io: return "I/O error";
    }
    return "error";
}

/// Domain error raised by every lexord operation.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace lexord
