#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace qcx {

using Integer = mpz_class;

enum class Errc {
    OutOfRange,
    RingMismatch,
    DivisionByZero,
    NotFinite,
    NonPositive,
    DigitOutOfRange,
    TooFewPoints,
    ParameterNotAdmissible,
    MissingSeeds,
    ChainBroken,
    BudgetExceeded,
    OutOfWindow,
    NotInRing,
    NoRewriteAvailable,
    MixedParameters,
    DepthTooSmall,
    ParseError,
    InvalidArgument,
};

std::string_view errc_name(Errc code) noexcept;

// Every failure raised by the library is an Error carrying one of the codes
// above. The few errors that carry a diagnostic payload derive from it.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string &what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

// Greedy expansion hit its depth bound; norm is N(x) of the expanded element.
class NotFiniteError : public Error {
public:
    NotFiniteError(const std::string &what, Integer norm)
        : Error(Errc::NotFinite, what), norm_(std::move(norm)) {}

    const Integer &norm() const noexcept { return norm_; }

private:
    Integer norm_;
};

class NoRewriteError : public Error {
public:
    NoRewriteError(const std::string &what, int index)
        : Error(Errc::NoRewriteAvailable, what), index_(index) {}

    int index() const noexcept { return index_; }

private:
    int index_;
};

class ParseError : public Error {
public:
    ParseError(const std::string &what, std::size_t position)
        : Error(Errc::ParseError, what + " (at position " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

}  // namespace qcx
