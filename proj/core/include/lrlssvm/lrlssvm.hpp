#pragma once

#include "lrlssvm/basis.hpp"
#include "lrlssvm/dataset.hpp"
#include "lrlssvm/error.hpp"
#include "lrlssvm/format.hpp"
#include "lrlssvm/init.hpp"
#include "lrlssvm/kernel_opt.hpp"
#include "lrlssvm/model_io.hpp"
#include "lrlssvm/solver.hpp"
#include "lrlssvm/trainer.hpp"
