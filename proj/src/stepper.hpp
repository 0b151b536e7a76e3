#pragma once

// Explicit stepper shared by the half-interval comparison equation and the
// full-interval radial flow.

#include "sharpgap/flux.hpp"
#include "sharpgap/model.hpp"
#include "sharpgap/moc_pde.hpp"

#include <cstddef>
#include <vector>

namespace sharpgap::detail {

struct TimedValues {
    double t;
    std::vector<double> values;
};

enum class LeftEnd { OddPivot, Outer };

struct StepperSetup {
    ModelParams params;
    Flux flux;                 // regularisation already resolved
    double origin = 0.0;       // x_0
    double h = 0.0;
    std::size_t cells = 0;     // nodes x_0 .. x_cells
    LeftEnd left = LeftEnd::OddPivot;
};

// Sorted, de-duplicated output times in [0, t_end] with t_end appended.
std::vector<double> output_schedule(const std::vector<double>& requested, double t_end);

std::vector<TimedValues> run_explicit(const StepperSetup& setup, std::vector<double> values, double t_end,
                                      const StepControls& controls);

} // namespace sharpgap::detail
