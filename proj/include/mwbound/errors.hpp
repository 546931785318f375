#pragma once

#include <stdexcept>
#include <string>

namespace mwbound {

/// Every failure mode the library reports, by name. The CLI maps these to
/// exit code 1 and serializes the name alongside the message.
enum class Errc {
    NotSymmetric,
    NotPositiveDefinite,
    DimensionMismatch,
    NotIsometry,
    NotUnimodular,
    RankNotTwo,
    NoConvergence,
    NotSelfAdjoint,
    SpectrumOutOfRange,
    BadMeasure,
    UnknownLabel,
    SupportIncludesIdentity,
    NoNonIdentityAction,
    NotReduced,
    InvalidComponent,
    MxMismatch,
    EqualVectors,
    BudgetExceeded,
    GroupNotClosed,
    ParseError,
    SchemaError,
    DimensionError,
    IoError,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& msg)
        : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

    Errc code() const { return code_; }

  private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

} // namespace mwbound
