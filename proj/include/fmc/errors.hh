#ifndef FMC_ERRORS_HH
#define FMC_ERRORS_HH

#include <stdexcept>
#include <string>

namespace fmc
{
    /// Base class for every error raised by the library.
    class Error : public std::runtime_error
    {
        public:
            using std::runtime_error::runtime_error;
    };

    class ParseError : public Error
    {
        public:
            ParseError(int line, const std::string & message) :
                Error("line " + std::to_string(line) + ": " + message),
                _line(line)
            {
            }

            auto line() const -> int { return _line; }

        private:
            int _line;
    };

    class VocabularyMismatch : public Error
    {
        public:
            using Error::Error;
    };

    /// An operation was called outside its domain (missing point, wrong
    /// coalgebra kind, non-homomorphism handed to coextension, ...).
    class PreconditionViolated : public Error
    {
        public:
            using Error::Error;
    };

    /// A configurable size cap was hit. Never a verdict.
    class ResourceLimitExceeded : public Error
    {
        public:
            using Error::Error;
    };

    /// Internal self-check failed. Indicates a bug, not bad input.
    class VerificationFailure : public Error
    {
        public:
            using Error::Error;
    };
}

#endif
