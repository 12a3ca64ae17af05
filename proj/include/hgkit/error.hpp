#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hgkit {

enum class ErrorCode {
  // identity / argument errors
  UnknownVertex,
  UnknownHyperedge,
  UnknownNode,
  NonFiniteWeight,
  InvalidS,
  IsolatedVertex,
  // document / format errors
  NonRectangular,
  MalformedHeader,
  IndexOutOfRange,
  BadWeightToken,
  DuplicateEntry,
  LineCountMismatch,
  SchemaViolation,
  DualInconsistency,
  // partition domain errors
  PartitionNotTotal,
  DomainMismatch,
  EmptyDomain,
  // degenerate numeric inputs
  NoHyperedges,
  NoUsableHyperedges,
  EmptyGraph,
  ZeroVariance,
  EmptyEvaluationSet,
};

/// Coarse grouping used by the command line tool to pick exit codes.
enum class ErrorFamily { Identity, Format, Domain, Numeric };

constexpr ErrorFamily family_of(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::UnknownVertex:
    case ErrorCode::UnknownHyperedge:
    case ErrorCode::UnknownNode:
    case ErrorCode::NonFiniteWeight:
    case ErrorCode::InvalidS:
    case ErrorCode::IsolatedVertex:
      return ErrorFamily::Identity;
    case ErrorCode::NonRectangular:
    case ErrorCode::MalformedHeader:
    case ErrorCode::IndexOutOfRange:
    case ErrorCode::BadWeightToken:
    case ErrorCode::DuplicateEntry:
    case ErrorCode::LineCountMismatch:
    case ErrorCode::SchemaViolation:
    case ErrorCode::DualInconsistency:
      return ErrorFamily::Format;
    case ErrorCode::PartitionNotTotal:
    case ErrorCode::DomainMismatch:
    case ErrorCode::EmptyDomain:
      return ErrorFamily::Domain;
    case ErrorCode::NoHyperedges:
    case ErrorCode::NoUsableHyperedges:
    case ErrorCode::EmptyGraph:
    case ErrorCode::ZeroVariance:
    case ErrorCode::EmptyEvaluationSet:
      return ErrorFamily::Numeric;
  }
  return ErrorFamily::Format;
}

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::UnknownHyperedge: return "UnknownHyperedge";
    case ErrorCode::UnknownNode: return "UnknownNode";
    case ErrorCode::NonFiniteWeight: return "NonFiniteWeight";
    case ErrorCode::InvalidS: return "InvalidS";
    case ErrorCode::IsolatedVertex: return "IsolatedVertex";
    case ErrorCode::NonRectangular: return "NonRectangular";
    case ErrorCode::MalformedHeader: return "MalformedHeader";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::BadWeightToken: return "BadWeightToken";
    case ErrorCode::DuplicateEntry: return "DuplicateEntry";
    case ErrorCode::LineCountMismatch: return "LineCountMismatch";
    case ErrorCode::SchemaViolation: return "SchemaViolation";
    case ErrorCode::DualInconsistency: return "DualInconsistency";
    case ErrorCode::PartitionNotTotal: return "PartitionNotTotal";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::EmptyDomain: return "EmptyDomain";
    case ErrorCode::NoHyperedges: return "NoHyperedges";
    case ErrorCode::NoUsableHyperedges: return "NoUsableHyperedges";
    case ErrorCode::EmptyGraph: return "EmptyGraph";
    case ErrorCode::ZeroVariance: return "ZeroVariance";
    case ErrorCode::EmptyEvaluationSet: return "EmptyEvaluationSet";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  ErrorFamily family() const noexcept { return family_of(code_); }

 private:
  ErrorCode code_;
};

}  // namespace hgkit
