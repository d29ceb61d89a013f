#pragma once

#include <stdexcept>
#include <string>

namespace framelet {

enum class Errc {
  SingularMatrix,
  NotExpansive,
  NotInteger,
  DegenerateLambda0,
  NonpositiveRho,
  BadEps0,
  BadEps,
  BadRho,
  NegativeRadicand,
  PartitionResidualTooLarge,
  IndexOutOfRange,
  SizeMismatch,
  LengthMismatch,
  GridTooCoarse,
  SupportOverflow,
  NoConvergence,
  DivergentMaskBudget,
  PlanTooSmall,
  PlanOverflow,
  IoError,
  BadConfig,
};

constexpr const char* errc_name(Errc c) {
  switch (c) {
    case Errc::SingularMatrix: return "SingularMatrix";
    case Errc::NotExpansive: return "NotExpansive";
    case Errc::NotInteger: return "NotInteger";
    case Errc::DegenerateLambda0: return "DegenerateLambda0";
    case Errc::NonpositiveRho: return "NonpositiveRho";
    case Errc::BadEps0: return "BadEps0";
    case Errc::BadEps: return "BadEps";
    case Errc::BadRho: return "BadRho";
    case Errc::NegativeRadicand: return "NegativeRadicand";
    case Errc::PartitionResidualTooLarge: return "PartitionResidualTooLarge";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::SizeMismatch: return "SizeMismatch";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::GridTooCoarse: return "GridTooCoarse";
    case Errc::SupportOverflow: return "SupportOverflow";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::DivergentMaskBudget: return "DivergentMaskBudget";
    case Errc::PlanTooSmall: return "PlanTooSmall";
    case Errc::PlanOverflow: return "PlanOverflow";
    case Errc::IoError: return "IoError";
    case Errc::BadConfig: return "BadConfig";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace framelet
