#pragma once

#include "hsym/analysis.hpp"
#include "hsym/bspline.hpp"
#include "hsym/chs.hpp"
#include "hsym/exact_poly.hpp"
#include "hsym/numerics.hpp"
#include "hsym/sampling.hpp"
#include "hsym/schur.hpp"
#include "hsym/semigroup.hpp"
#include "hsym/verify.hpp"
