#pragma once

#include "experiments.hpp"

namespace sglab::cli {

RunResult run_logrep(const Params& p);
RunResult run_colehopf(const Params& p);
RunResult run_xevolve(const Params& p);
RunResult run_subordinate(const Params& p);
RunResult run_identities(const Params& p);

}  // namespace sglab::cli
