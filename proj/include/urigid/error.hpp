#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace urigid {

enum class ErrorKind {
    MissingComposite,
    AssociativityViolation,
    BadEndpoints,
    DuplicateName,
    UnknownName,
    ParseError,
    NotIdempotent,
    NotCauchyComplete,
    WrongCodomain,
    BudgetExceeded,
    NotPartialOrder,
    NotAssociative,
    NoIdentity,
    BoundExceeded,
    PreconditionViolated,
};

inline std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::MissingComposite: return "MissingComposite";
    case ErrorKind::AssociativityViolation: return "AssociativityViolation";
    case ErrorKind::BadEndpoints: return "BadEndpoints";
    case ErrorKind::DuplicateName: return "DuplicateName";
    case ErrorKind::UnknownName: return "UnknownName";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::NotIdempotent: return "NotIdempotent";
    case ErrorKind::NotCauchyComplete: return "NotCauchyComplete";
    case ErrorKind::WrongCodomain: return "WrongCodomain";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NotPartialOrder: return "NotPartialOrder";
    case ErrorKind::NotAssociative: return "NotAssociative";
    case ErrorKind::NoIdentity: return "NoIdentity";
    case ErrorKind::BoundExceeded: return "BoundExceeded";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    }
    return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace urigid
