#pragma once

#include <stdexcept>
#include <string>

namespace hillevans {

// Root of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define HILLEVANS_DEFINE_ERROR(Name)          \
    class Name : public Error {               \
    public:                                   \
        using Error::Error;                   \
    };

HILLEVANS_DEFINE_ERROR(CoprimalityError)
HILLEVANS_DEFINE_ERROR(TrivialClassError)
HILLEVANS_DEFINE_ERROR(ClassRangeError)
HILLEVANS_DEFINE_ERROR(BranchCutError)
HILLEVANS_DEFINE_ERROR(SingularPotentialError)
HILLEVANS_DEFINE_ERROR(PotentialPoleError)
HILLEVANS_DEFINE_ERROR(PoleProximityError)
HILLEVANS_DEFINE_ERROR(SingularMatrixError)
HILLEVANS_DEFINE_ERROR(ConvergenceError)
HILLEVANS_DEFINE_ERROR(ContourThroughRootError)
HILLEVANS_DEFINE_ERROR(DegenerateParameterError)
HILLEVANS_DEFINE_ERROR(EigenError)
HILLEVANS_DEFINE_ERROR(OracleMismatchError)
HILLEVANS_DEFINE_ERROR(UsageError)

#undef HILLEVANS_DEFINE_ERROR

// A branch-cut failure inside one factor of the full Euler Evans product.
class ClassBranchCutError : public BranchCutError {
public:
    ClassBranchCutError(long long k, const std::string& what)
        : BranchCutError("class k=" + std::to_string(k) + ": " + what), k_(k) {}
    long long k() const noexcept { return k_; }

private:
    long long k_;
};

} // namespace hillevans
