#pragma once

#include <stdexcept>
#include <string>

namespace leakproof {

// Error taxonomy. Each condition named by the contract it violates so
// callers can catch precisely.

struct StructureError : std::runtime_error {
  explicit StructureError(const std::string& m) : std::runtime_error("StructureError: " + m) {}
};
struct DanglingHistory : std::runtime_error {
  explicit DanglingHistory(const std::string& m) : std::runtime_error("DanglingHistory: " + m) {}
};
struct MissingOutcome : std::runtime_error {
  explicit MissingOutcome(const std::string& m) : std::runtime_error("MissingOutcome: " + m) {}
};
struct UnknownHistory : std::runtime_error {
  explicit UnknownHistory(const std::string& m) : std::runtime_error("UnknownHistory: " + m) {}
};
struct EmptyPrune : std::runtime_error {
  explicit EmptyPrune(const std::string& m) : std::runtime_error("EmptyPrune: " + m) {}
};
struct InconsistentOrder : std::runtime_error {
  explicit InconsistentOrder(const std::string& m) : std::runtime_error("InconsistentOrder: " + m) {}
};
struct UndefinedPlan : std::runtime_error {
  explicit UndefinedPlan(const std::string& m) : std::runtime_error("UndefinedPlan: " + m) {}
};
struct UndefinedOpponentPlan : std::runtime_error {
  explicit UndefinedOpponentPlan(const std::string& m)
      : std::runtime_error("UndefinedOpponentPlan: " + m) {}
};
struct NoEquilibriumFound : std::runtime_error {
  explicit NoEquilibriumFound(const std::string& m)
      : std::runtime_error("NoEquilibriumFound: " + m) {}
};
struct GridError : std::runtime_error {
  explicit GridError(const std::string& m) : std::runtime_error("GridError: " + m) {}
};
struct TieBreakError : std::runtime_error {
  explicit TieBreakError(const std::string& m) : std::runtime_error("TieBreakError: " + m) {}
};
struct ZeroPriorMass : std::runtime_error {
  explicit ZeroPriorMass(const std::string& m) : std::runtime_error("ZeroPriorMass: " + m) {}
};
struct AllNegative : std::runtime_error {
  explicit AllNegative(const std::string& m) : std::runtime_error("AllNegative: " + m) {}
};
struct OffPathHistory : std::runtime_error {
  explicit OffPathHistory(const std::string& m) : std::runtime_error("OffPathHistory: " + m) {}
};
struct PrereqFailed : std::runtime_error {
  explicit PrereqFailed(const std::string& m) : std::runtime_error("PrereqFailed: " + m) {}
};
struct NotPruned : std::runtime_error {
  explicit NotPruned(const std::string& m) : std::runtime_error("NotPruned: " + m) {}
};
struct RationalOverflow : std::runtime_error {
  explicit RationalOverflow(const std::string& m)
      : std::runtime_error("RationalOverflow: " + m) {}
};
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& m) : std::runtime_error("ParseError: " + m) {}
};

}  // namespace leakproof
