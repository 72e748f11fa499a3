#pragma once

#include "bench.hpp"
#include "errors.hpp"
#include "exact_oracle.hpp"
#include "format.hpp"
#include "ga_engine.hpp"
#include "operators.hpp"
#include "random.hpp"
#include "tsp_core.hpp"
#include "tsplib.hpp"
