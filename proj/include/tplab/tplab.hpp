#ifndef TPLAB_TPLAB_HPP
#define TPLAB_TPLAB_HPP

#include "tplab/errors.hpp"
#include "tplab/estimators.hpp"
#include "tplab/io.hpp"
#include "tplab/kernels.hpp"
#include "tplab/parallel.hpp"
#include "tplab/params.hpp"
#include "tplab/process.hpp"
#include "tplab/quad.hpp"
#include "tplab/rng.hpp"
#include "tplab/sampler.hpp"
#include "tplab/specfun.hpp"
#include "tplab/validate.hpp"

#endif
