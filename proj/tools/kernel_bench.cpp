// Micro-benchmark for the two OpenMP kernels against their serial reference
// implementations, including a bit-identity check on the outputs.

#include "ftc/synthesis.hpp"
#include "ftc/uncertainty.hpp"
#include "ftc/workbench.hpp"

#include <chrono>
#include <cstdio>

using namespace ftc;
using Clock = std::chrono::steady_clock;

namespace {

template <typename F>
double time_ms(F&& f, int reps) {
    const auto t0 = Clock::now();
    for (int i = 0; i < reps; ++i) f();
    const auto t1 = Clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

}  // namespace

int main() {
    WorkbenchConfig config;
    const Workbench wb = Workbench::load(config);
    const DesignPoint pt = design_points()[3];
    const PerturbationGrid pgrid = PerturbationGrid::for_point(pt);
    const FrequencyGrid fgrid = FrequencyGrid::log_default();

    const auto env_par = [&] {
        return relative_error_envelope(Axis::Pitch, pt, wb.aircraft(), wb.aero(), pgrid, fgrid);
    };
    const auto env_ser = [&] {
        return relative_error_envelope_serial(Axis::Pitch, pt, wb.aircraft(), wb.aero(), pgrid, fgrid);
    };
    const RelativeErrorEnvelope a = env_par(), b = env_ser();
    bool identical = a.l == b.l;
    std::printf("envelope kernel   : omp %8.3f ms   serial %8.3f ms   bit-identical: %s\n",
                time_ms(env_par, 5), time_ms(env_ser, 5), identical ? "yes" : "NO");

    const RationalTF plant = wb.design_plant(Axis::Pitch, pt.V_bar);
    const SynthesisWeights w = wb.build_weights(Axis::Pitch, pt);
    const ClosedLoop cl = closed_loop(plant, wb.initial_gains(Axis::Pitch));
    const auto cost_par = [&] { return mixed_cost(cl, w, fgrid); };
    const auto cost_ser = [&] { return mixed_cost_serial(cl, w, fgrid); };
    identical = cost_par() == cost_ser();
    std::printf("stacked-cost sweep: omp %8.3f ms   serial %8.3f ms   bit-identical: %s\n",
                time_ms(cost_par, 200), time_ms(cost_ser, 200), identical ? "yes" : "NO");
    return 0;
}
