#ifndef ABSIX_ERRORS_HPP
#define ABSIX_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace absix {

/// Base class for every error raised by the engine. `code()` is the stable
/// machine-readable name printed by the CLI.
class Error : public std::runtime_error
{
  public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code))
    {
    }

    const std::string& code() const noexcept { return code_; }

  private:
    std::string code_;
};

#define ABSIX_DEFINE_ERROR(Name)                                        \
    class Name : public Error                                           \
    {                                                                   \
      public:                                                           \
        explicit Name(const std::string& what) : Error(#Name, what) {} \
    }

ABSIX_DEFINE_ERROR(DimensionError);
ABSIX_DEFINE_ERROR(PairingNotPerfect);
ABSIX_DEFINE_ERROR(WeightMismatch);
ABSIX_DEFINE_ERROR(HodgeTypeMismatch);
ABSIX_DEFINE_ERROR(PreconditionViolated);
ABSIX_DEFINE_ERROR(NotIdempotent);
ABSIX_DEFINE_ERROR(InvalidAtlas);
ABSIX_DEFINE_ERROR(ParseError);
ABSIX_DEFINE_ERROR(UnknownCorpusItem);
ABSIX_DEFINE_ERROR(MissingSelfIntersections);

#undef ABSIX_DEFINE_ERROR

}   // namespace absix

#endif
