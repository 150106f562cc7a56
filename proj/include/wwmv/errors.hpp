#pragma once

#include <stdexcept>
#include <string>

namespace wwmv {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define WWMV_ERROR(Name)                                   \
    class Name : public Error {                            \
    public:                                                \
        explicit Name(const std::string& what)             \
            : Error(std::string(#Name ": ") + what) {}     \
    };

WWMV_ERROR(GridMismatch)
WWMV_ERROR(NonRealPotential)
WWMV_ERROR(DimensionMismatch)
WWMV_ERROR(IncommensurateShift)
WWMV_ERROR(NotDensityMatrix)
WWMV_ERROR(NonRealHamiltonian)
WWMV_ERROR(UnsupportedExponent)
WWMV_ERROR(ParseError)
WWMV_ERROR(IoError)
WWMV_ERROR(ValidationError)

#undef WWMV_ERROR

}  // namespace wwmv
