#pragma once

#include "lcs/errors.hpp"
#include "lcs/specfun.hpp"
#include "lcs/fock.hpp"
#include "lcs/quadrature.hpp"
#include "lcs/measure.hpp"
#include "lcs/bgcs.hpp"
#include "lcs/resolution.hpp"
#include "lcs/quantize.hpp"
#include "lcs/thermo.hpp"
