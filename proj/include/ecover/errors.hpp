#ifndef ECOVER_ERRORS_HPP
#define ECOVER_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ecover {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : Error { using Error::Error; };
struct EvaluationError : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct SignError : Error { using Error::Error; };
struct DerivativeVanished : Error { using Error::Error; };
struct RankDeficient : Error { using Error::Error; };
struct FieldMismatch : Error { using Error::Error; };
struct DivisionByZero : Error { using Error::Error; };
struct PoleError : Error { using Error::Error; };
struct SizeMismatch : Error { using Error::Error; };
struct TooLarge : Error { using Error::Error; };
struct SingularSystem : Error { using Error::Error; };
struct BadResidual : Error { using Error::Error; };
struct RecognitionFailure : Error { using Error::Error; };
struct NotAPerfectSquare : Error { using Error::Error; };
struct StageFailure : Error {
    StageFailure(const std::string& stage, const std::string& what)
        : Error("stage '" + stage + "': " + what), stage(stage) {}
    std::string stage;
};

} // namespace ecover

#endif
