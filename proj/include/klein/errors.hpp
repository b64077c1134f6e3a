#pragma once

#include <stdexcept>
#include <string>

namespace klein {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define KLEIN_DEFINE_ERROR(Name)                                  \
    struct Name : Error {                                         \
        explicit Name(const std::string& what) : Error(what) {}   \
    }

KLEIN_DEFINE_ERROR(ZeroParameter);
KLEIN_DEFINE_ERROR(OutOfDomain);
KLEIN_DEFINE_ERROR(DegenerateVelocity);
KLEIN_DEFINE_ERROR(NonpositiveRadiusBase);
KLEIN_DEFINE_ERROR(RadiusNotPositive);
KLEIN_DEFINE_ERROR(DerivativeUnbounded);
KLEIN_DEFINE_ERROR(DomainMismatch);
KLEIN_DEFINE_ERROR(DegenerateDirectrix);
KLEIN_DEFINE_ERROR(NotAntipodalTangents);
KLEIN_DEFINE_ERROR(ParameterOutOfRange);
KLEIN_DEFINE_ERROR(StepTooLarge);
KLEIN_DEFINE_ERROR(NoIdentification);
KLEIN_DEFINE_ERROR(DegenerateNormal);
KLEIN_DEFINE_ERROR(NotWatertight);
KLEIN_DEFINE_ERROR(InconsistentSeam);
KLEIN_DEFINE_ERROR(SinkFailure);
KLEIN_DEFINE_ERROR(TooManyTriangles);
KLEIN_DEFINE_ERROR(UnknownSurface);
KLEIN_DEFINE_ERROR(UnknownParameter);

#undef KLEIN_DEFINE_ERROR

} // namespace klein
