#pragma once

#include "error.hpp"
#include "series_control.hpp"
#include "order.hpp"
#include "specfun.hpp"
#include "bessel.hpp"
#include "tricomi.hpp"
#include "hankel.hpp"
#include "parallel.hpp"
#include "partialwave.hpp"
#include "xsection.hpp"
#include "phasesolve.hpp"
