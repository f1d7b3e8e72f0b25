#pragma once

#include <stdexcept>
#include <string>

namespace rydfibre {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidStateError : public Error {
public:
    using Error::Error;
};

/// (L, J) series absent from the loaded quantum-defect table.
class MissingSeriesError : public Error {
public:
    using Error::Error;
};

class ForbiddenTransitionError : public Error {
public:
    using Error::Error;
};

/// Radial integration failed (grid does not bracket the classical region, ...).
class RadialConvergenceError : public Error {
public:
    using Error::Error;
};

class GeometryError : public Error {
public:
    using Error::Error;
};

/// Cylinder quadrature did not reach the requested tolerance.
class QuadratureError : public Error {
public:
    QuadratureError(const std::string& what, double residual)
        : Error(what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

class EmptyBasisError : public Error {
public:
    using Error::Error;
};

class BasisTooLargeError : public Error {
public:
    using Error::Error;
};

class ChannelError : public Error {
public:
    using Error::Error;
};

/// Pair detuning below the perturbative floor; second-order results are refused.
class QuasiResonanceError : public Error {
public:
    QuasiResonanceError(const std::string& what, std::size_t pair_index, double detuning_ghz)
        : Error(what), pair_index_(pair_index), detuning_ghz_(detuning_ghz) {}
    std::size_t pair_index() const noexcept { return pair_index_; }
    double detuning_ghz() const noexcept { return detuning_ghz_; }

private:
    std::size_t pair_index_;
    double detuning_ghz_;
};

/// Adiabatic tracking is ambiguous: no eigenvector overlaps the initial manifold by >= 0.5.
class TrackingError : public Error {
public:
    TrackingError(const std::string& what, double max_overlap)
        : Error(what), max_overlap_(max_overlap) {}
    double max_overlap() const noexcept { return max_overlap_; }

private:
    double max_overlap_;
};

class FitError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace rydfibre
