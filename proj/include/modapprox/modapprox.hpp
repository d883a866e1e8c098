#pragma once

#include "modapprox/approx.hpp"
#include "modapprox/arith.hpp"
#include "modapprox/bigfloat.hpp"
#include "modapprox/cache.hpp"
#include "modapprox/coefficients.hpp"
#include "modapprox/contfrac.hpp"
#include "modapprox/equidist.hpp"
#include "modapprox/error.hpp"
#include "modapprox/game.hpp"
#include "modapprox/inhomog.hpp"
#include "modapprox/ntt.hpp"
#include "modapprox/rate.hpp"
