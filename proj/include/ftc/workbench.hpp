#pragma once

#include "ftc/evaluation.hpp"
#include "ftc/models.hpp"
#include "ftc/robustness.hpp"
#include "ftc/scheduler.hpp"
#include "ftc/simulator.hpp"
#include "ftc/synthesis.hpp"
#include "ftc/uncertainty.hpp"

#include <cstdint>
#include <string>
#include <vector>

// Pipeline orchestration shared by the command-line tool and the test
// harness: fixture loading, per-(axis, point) weight construction, synthesis,
// robustness analysis, and scenario simulation.

namespace ftc {

struct WorkbenchConfig {
    std::string aircraft_path = "fixtures/aircraft.cfg";
    std::string weights_path = "fixtures/weights.cfg";
    std::string scenario_dir = "fixtures";  // <case>.cfg per fault case
    std::string out_dir = "out";
    std::uint64_t seed = 3;
    std::vector<int> points = {1, 2, 3, 4, 5, 6};
};

// Per-(axis, point) sensitivity weight parameters plus per-axis control
// weight parameters, read from the weight fixture.
struct WeightTable {
    double A;
    std::array<std::array<double, 6>, 3> M, omega_b;  // [axis][point-1]
    std::array<ControlWeightParams, 3> control;

    static WeightTable from_fixture(const Fixture& f);
    SensitivityWeightParams sensitivity(Axis axis, int point) const;
};

class Workbench {
public:
    static Workbench load(const WorkbenchConfig& config);

    const WorkbenchConfig& config() const { return config_; }
    const AircraftParameters& aircraft() const { return aircraft_; }
    const AeroCoefficientTable& aero() const { return aero_; }
    const WeightTable& weights() const { return weights_; }
    const std::string& config_hash() const { return hash_; }

    // Rate plant at the design airspeed in series with the actuator lag,
    // which the tuned loop must tolerate in the nonlinear environment.
    RationalTF design_plant(Axis axis, double V, double gamma = 0.0) const;

    RelativeErrorEnvelope envelope(Axis axis, const DesignPoint& pt) const;
    SynthesisWeights build_weights(Axis axis, const DesignPoint& pt) const;

    CascadedGains initial_gains(Axis axis) const;
    std::vector<SynthesisExportRow> synthesize() const;

    ClosedLoop loop_for(const SynthesisExportRow& row) const;
    MuReport analyze(const std::vector<SynthesisExportRow>& rows) const;
    std::vector<PoleReportEntry> pole_report(const std::vector<SynthesisExportRow>& rows) const;

    std::array<double, 3> moment_limits() const;
    ControllerSet controllers(ControllerVariant variant, const GainSchedule& schedule) const;

    // Simulates one scenario file (<scenario_dir>/<case_name>.cfg).
    SimLog simulate(const std::string& case_name, ControllerVariant variant,
                    const GainSchedule& schedule) const;

private:
    WorkbenchConfig config_;
    AircraftParameters aircraft_;
    AeroCoefficientTable aero_;
    WeightTable weights_;
    std::string hash_;
};

// FNV-1a over the given strings, hex-encoded; used to stamp artifacts.
std::string config_digest(const std::vector<std::string>& parts);

// Prepends "# config <hash> seed <seed>" to an existing text artifact.
void stamp_artifact(const std::string& path, const std::string& hash, std::uint64_t seed);

}  // namespace ftc
