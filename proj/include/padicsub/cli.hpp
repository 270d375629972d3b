#pragma once

#include <string>

#include "padicsub/subdivision.hpp"

namespace padicsub {

/// Stable exit codes shared by every subcommand.
enum ExitCode {
    kExitOk = 0,
    kExitInputError = 1,
    kExitDivergent = 2,
    kExitInconclusive = 3,
    kExitBudget = 4,
};

/// CSV rendering of a step function: level, exact center, Monna coordinate,
/// re, im, abs; rows in digit-lexicographic (= Monna) order.
std::string step_function_csv(const BallStepFunction& f);

/// Full command-line entry point.
int run_cli(int argc, const char* const* argv);

}  // namespace padicsub
