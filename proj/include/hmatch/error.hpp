#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hmatch {

enum class Errc {
  EmptyEdge,
  DuplicateEdge,
  VertexOutOfRange,
  IndexOutOfRange,
  SizeMismatch,
  NegativeWeight,
  InfeasiblePoint,
  NotReduced,
  NotBasic,
  InvalidK,
  ScheduleUndefinedForSize,
  DegenerateEqualDiscounts,
  OutOfRangeN,
  NoFeasibleQ,
  InstanceTooLarge,
  AllRatesZero,
  NotPrime,
  TooLarge,
  Unsatisfiable,
  InvalidParameter,
  MalformedInput,
};

constexpr std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::EmptyEdge: return "EmptyEdge";
    case Errc::DuplicateEdge: return "DuplicateEdge";
    case Errc::VertexOutOfRange: return "VertexOutOfRange";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::SizeMismatch: return "SizeMismatch";
    case Errc::NegativeWeight: return "NegativeWeight";
    case Errc::InfeasiblePoint: return "InfeasiblePoint";
    case Errc::NotReduced: return "NotReduced";
    case Errc::NotBasic: return "NotBasic";
    case Errc::InvalidK: return "InvalidK";
    case Errc::ScheduleUndefinedForSize: return "ScheduleUndefinedForSize";
    case Errc::DegenerateEqualDiscounts: return "DegenerateEqualDiscounts";
    case Errc::OutOfRangeN: return "OutOfRangeN";
    case Errc::NoFeasibleQ: return "NoFeasibleQ";
    case Errc::InstanceTooLarge: return "InstanceTooLarge";
    case Errc::AllRatesZero: return "AllRatesZero";
    case Errc::NotPrime: return "NotPrime";
    case Errc::TooLarge: return "TooLarge";
    case Errc::Unsatisfiable: return "Unsatisfiable";
    case Errc::InvalidParameter: return "InvalidParameter";
    case Errc::MalformedInput: return "MalformedInput";
  }
  return "Unknown";
}

/// Exception carrying a machine-checkable error code.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace hmatch
