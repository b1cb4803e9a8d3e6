#pragma once

#include "klorentz/cone.hpp"
#include "klorentz/errors.hpp"
#include "klorentz/linalg.hpp"
#include "klorentz/lorentzian.hpp"
#include "klorentz/matrix_maps.hpp"
#include "klorentz/polynomial.hpp"
#include "klorentz/psd_quartic.hpp"
#include "klorentz/rational.hpp"
#include "klorentz/sampling.hpp"
#include "klorentz/tolerance.hpp"
#include "klorentz/univariate.hpp"
#include "klorentz/verdict.hpp"
