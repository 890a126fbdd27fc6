#pragma once

#include "ftc/linsys.hpp"
#include "ftc/models.hpp"

#include <stdexcept>
#include <vector>

// Worst-case relative-error envelope over the perturbed (V, gamma) family at
// a design point, and a first-order multiplicative weight covering it.

namespace ftc {

struct UncertaintyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NominalZero : UncertaintyError {
    using UncertaintyError::UncertaintyError;
};
struct FitFailure : UncertaintyError {
    using UncertaintyError::UncertaintyError;
};

struct PerturbationGrid {
    std::vector<double> airspeeds;  // in [V_min, V_max], includes endpoints and V_bar
    std::vector<double> gammas;     // in [0, 0.6], includes endpoints

    static PerturbationGrid for_point(const DesignPoint& pt, std::size_t n_v = 9, std::size_t n_g = 7);
};

struct RelativeErrorEnvelope {
    FrequencyGrid grid;
    std::vector<double> l;  // pointwise max relative error
};

struct UncertaintyWeight {
    RationalTF W_t;  // k (s/z + 1) / (s/p + 1), stable, minimum phase
    double k, z, p;
};

std::vector<RationalTF> perturbed_samples(Axis axis, const DesignPoint& pt,
                                          const AircraftParameters& p, const AeroCoefficientTable& a,
                                          const PerturbationGrid& grid);

RelativeErrorEnvelope relative_error_envelope(Axis axis, const DesignPoint& pt,
                                              const AircraftParameters& p,
                                              const AeroCoefficientTable& a,
                                              const PerturbationGrid& pgrid,
                                              const FrequencyGrid& fgrid);

// Serial reference for the envelope kernel; the default dispatches the
// frequency loop across OpenMP threads.
RelativeErrorEnvelope relative_error_envelope_serial(Axis axis, const DesignPoint& pt,
                                                     const AircraftParameters& p,
                                                     const AeroCoefficientTable& a,
                                                     const PerturbationGrid& pgrid,
                                                     const FrequencyGrid& fgrid);

UncertaintyWeight fit_weight(const RelativeErrorEnvelope& env);

}  // namespace ftc
