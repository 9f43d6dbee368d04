#pragma once

#include <stdexcept>
#include <string>

namespace ringlab {

/// Base class for every error this library throws on purpose.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed ring spec or polynomial literal.
struct ParseError : Error {
    using Error::Error;
};

/// Explicit gf modulus that is not irreducible over Z_p.
struct NotIrreducible : Error {
    using Error::Error;
};

/// A requested computation exceeds the configured element/tuple/table caps.
struct BudgetExceeded : Error {
    using Error::Error;
};

/// Inverse requested for a non-unit.
struct NotAUnit : Error {
    using Error::Error;
};

/// Operands belong to different rings, or a dual-ring operation was handed
/// a ring that is not a dual ring.
struct WrongRing : Error {
    using Error::Error;
};

/// Division requested by a non-monic polynomial.
struct NotMonic : Error {
    using Error::Error;
};

/// Chain-ring operation on a ring that is not a finite chain ring.
struct NotAChainRing : Error {
    using Error::Error;
};

/// Chain-ring operation that needs characteristic p^c with c > 1.
struct CharIsP : Error {
    using Error::Error;
};

/// Operation that requires a commutative ring.
struct NotCommutative : Error {
    using Error::Error;
};

/// Verification suite name that does not exist or does not apply.
struct UnsupportedSuite : Error {
    using Error::Error;
};

}  // namespace ringlab
