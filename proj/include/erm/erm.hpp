#pragma once

#include "erm/csv.hpp"
#include "erm/dataset.hpp"
#include "erm/error.hpp"
#include "erm/generate.hpp"
#include "erm/hypothesis.hpp"
#include "erm/loss.hpp"
#include "erm/model_io.hpp"
#include "erm/random.hpp"
#include "erm/robustness.hpp"
#include "erm/solvers.hpp"
#include "erm/svg.hpp"
