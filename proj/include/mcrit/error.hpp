#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mcrit
{

enum class ErrorKind {
    DegenerateRoots,
    PoleProximity,
    DomainError,
    HZeroModel,
    OutOfDomain,
    SingularDensity,
    BlowupInRange,
    OutOfImage,
    EmptyInput,
    NumericalFailure,
};

std::string_view to_string(ErrorKind kind) noexcept;

// All library failures are reported through this exception. The kind is
// what callers switch on; the message is for humans.
class Error : public std::runtime_error
{
public:
    Error(ErrorKind kind, const std::string &what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), m_kind(kind)
    {
    }

    ErrorKind kind() const noexcept
    {
        return m_kind;
    }

private:
    ErrorKind m_kind;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string &what)
{
    throw Error(kind, what);
}

inline std::string_view to_string(ErrorKind kind) noexcept
{
    switch (kind) {
        case ErrorKind::DegenerateRoots:
            return "DegenerateRoots";
        case ErrorKind::PoleProximity:
            return "PoleProximity";
        case ErrorKind::DomainError:
            return "DomainError";
        case ErrorKind::HZeroModel:
            return "HZeroModel";
        case ErrorKind::OutOfDomain:
            return "OutOfDomain";
        case ErrorKind::SingularDensity:
            return "SingularDensity";
        case ErrorKind::BlowupInRange:
            return "BlowupInRange";
        case ErrorKind::OutOfImage:
            return "OutOfImage";
        case ErrorKind::EmptyInput:
            return "EmptyInput";
        case ErrorKind::NumericalFailure:
            return "NumericalFailure";
    }
    return "Unknown";
}

} // namespace mcrit
