// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace rmt {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define RMT_DEFINE_ERROR(NAME)                                        \
    class NAME : public Error {                                       \
    public:                                                           \
        explicit NAME(const std::string& msg) : Error(#NAME ": " + msg) {} \
    }

RMT_DEFINE_ERROR(DomainError);        // parameter outside its stated domain
RMT_DEFINE_ERROR(DegenerateSeries);   // zero-variance time series
RMT_DEFINE_ERROR(LengthMismatch);     // series length != N*n
RMT_DEFINE_ERROR(BadAspect);          // N > n
RMT_DEFINE_ERROR(NumericalFailure);   // eigen/SVD/QR breakdown
RMT_DEFINE_ERROR(EmptyRange);         // no eigenvalues inside histogram range
RMT_DEFINE_ERROR(GridMismatch);       // density curves on different grids
RMT_DEFINE_ERROR(QuadratureFailure);  // adaptive quadrature tolerance not met
RMT_DEFINE_ERROR(ShapeMismatch);      // inhomogeneous matrix ensemble
RMT_DEFINE_ERROR(DegenerateSpectrum); // all eigenvalues equal
RMT_DEFINE_ERROR(InsufficientRuns);   // too few Monte Carlo runs to calibrate
RMT_DEFINE_ERROR(MetricKindMismatch); // metric value vs calibration table kind
RMT_DEFINE_ERROR(BadMagic);           // IQ file magic missing
RMT_DEFINE_ERROR(TruncatedFile);      // IQ file shorter than header promises
RMT_DEFINE_ERROR(IOFailure);          // generic file I/O failure

#undef RMT_DEFINE_ERROR

} // namespace rmt
