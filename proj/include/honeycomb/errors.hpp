#pragma once

#include <stdexcept>
#include <string>

namespace honeycomb {

// Base class for all library errors. `code()` is a stable machine-readable
// identifier (used by the CLI for structured error reporting).
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define HONEYCOMB_DEFINE_ERROR(Name)                                     \
    class Name : public Error {                                          \
    public:                                                               \
        explicit Name(const std::string& what) : Error(#Name, what) {}    \
    }

HONEYCOMB_DEFINE_ERROR(NotCoprime);
HONEYCOMB_DEFINE_ERROR(IncompatibleTermination);
HONEYCOMB_DEFINE_ERROR(ClassicalZigzagUnsupported);
HONEYCOMB_DEFINE_ERROR(ExceptionalQuasimomentum);
HONEYCOMB_DEFINE_ERROR(Unsolvable);
HONEYCOMB_DEFINE_ERROR(DomainError);
HONEYCOMB_DEFINE_ERROR(RootOnCircle);
HONEYCOMB_DEFINE_ERROR(InEssentialSpectrum);
HONEYCOMB_DEFINE_ERROR(MultipleRoot);
HONEYCOMB_DEFINE_ERROR(ZeroEigenvector);
HONEYCOMB_DEFINE_ERROR(NoState);
HONEYCOMB_DEFINE_ERROR(IllConditioned);
HONEYCOMB_DEFINE_ERROR(OutOfBand);
HONEYCOMB_DEFINE_ERROR(PhaseStepTooLarge);
HONEYCOMB_DEFINE_ERROR(CircleHitsEssentialSpectrum);
HONEYCOMB_DEFINE_ERROR(NotCertified);
HONEYCOMB_DEFINE_ERROR(NumericalFailure);

#undef HONEYCOMB_DEFINE_ERROR

} // namespace honeycomb
