#pragma once

#include "crossbar/analysis.hpp"
#include "crossbar/core_model.hpp"
#include "crossbar/dense.hpp"
#include "crossbar/errors.hpp"
#include "crossbar/experiment.hpp"
#include "crossbar/lowrank.hpp"
#include "crossbar/matrix_io.hpp"
#include "crossbar/matrixgen.hpp"
#include "crossbar/montecarlo.hpp"
#include "crossbar/random.hpp"
#include "crossbar/schemes.hpp"
