#pragma once

#include "qkernel/context.hpp"
#include "qkernel/errors.hpp"
#include "qkernel/hypergeometric.hpp"
#include "qkernel/pochhammer.hpp"
#include "qkernel/polynomials.hpp"
#include "qkernel/power_series.hpp"
#include "qkernel/quadrature.hpp"
#include "qkernel/summation.hpp"
