#pragma once

#include <stdexcept>
#include <string>

namespace zoom {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define ZOOM_ERROR(Name)                                   \
    class Name : public Error {                            \
    public:                                                \
        explicit Name(const std::string& what) : Error(what) {} \
    }

ZOOM_ERROR(InvalidArgument);
ZOOM_ERROR(PerfectSquare);
ZOOM_ERROR(InconsistentOrbit);
ZOOM_ERROR(NotASolution);
ZOOM_ERROR(UnsupportedFactor);
ZOOM_ERROR(NoPrimitiveSolution);
ZOOM_ERROR(NoGap);
ZOOM_ERROR(OutOfRange);
ZOOM_ERROR(OffRegion);
ZOOM_ERROR(DegenerateCurve);
ZOOM_ERROR(OnBoundary);
ZOOM_ERROR(TooLarge);
ZOOM_ERROR(ParameterOutOfRange);
ZOOM_ERROR(DegenerateSlope);

#undef ZOOM_ERROR

} // namespace zoom
