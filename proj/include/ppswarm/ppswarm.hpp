#pragma once

#include "algorithm_config.hpp"
#include "harness.hpp"
#include "kernels.hpp"
#include "metrics.hpp"
#include "objectives.hpp"
#include "perturbation.hpp"
#include "random.hpp"
#include "report.hpp"
#include "run.hpp"
#include "search_space.hpp"
#include "swarm_state.hpp"
#include "cli.hpp"
