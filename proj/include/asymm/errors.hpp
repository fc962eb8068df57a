#pragma once

#include <stdexcept>
#include <string>

namespace asymm {

// Base class for every validation or numerical-consistency failure thrown by
// the library. Catching asymm::Error catches them all.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionMismatch : Error { using Error::Error; };
struct NotHermitian : Error { using Error::Error; };
struct NotPSD : Error { using Error::Error; };
struct TraceNotOne : Error { using Error::Error; };
struct InvalidState : Error { using Error::Error; };
struct NotPure : Error { using Error::Error; };
struct InvalidSpin : Error { using Error::Error; };
struct InvalidGroup : Error { using Error::Error; };
struct InvalidRepresentation : Error { using Error::Error; };
struct InvalidDensity : Error { using Error::Error; };
struct GroupMismatch : Error { using Error::Error; };
struct InvalidChannel : Error { using Error::Error; };
struct InvalidDilation : Error { using Error::Error; };
struct InvalidOrder : Error { using Error::Error; };
struct ZeroAsymmetry : Error { using Error::Error; };
struct UnknownInstance : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

// Thrown when a quantity that is nonnegative by theory comes out more negative
// than roundoff can explain.
struct NumericalConsistency : Error { using Error::Error; };

}  // namespace asymm
