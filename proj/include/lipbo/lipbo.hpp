#pragma once

// Umbrella header.

#include "lipbo/acquisition.hpp"
#include "lipbo/benchmarks.hpp"
#include "lipbo/cli.hpp"
#include "lipbo/config.hpp"
#include "lipbo/geometry.hpp"
#include "lipbo/gp.hpp"
#include "lipbo/harness.hpp"
#include "lipbo/lipschitz.hpp"
#include "lipbo/random.hpp"
