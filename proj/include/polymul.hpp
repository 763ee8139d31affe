#pragma once

#include "polymul/bases.hpp"
#include "polymul/bernstein.hpp"
#include "polymul/dgmul.hpp"
#include "polymul/galerkin.hpp"
#include "polymul/json_io.hpp"
#include "polymul/lagrange.hpp"
#include "polymul/matrix.hpp"
#include "polymul/opmatrix.hpp"
#include "polymul/opmatrix_cache.hpp"
#include "polymul/oracle.hpp"
#include "polymul/polynomial_io.hpp"
#include "polymul/quadrature.hpp"
#include "polymul/random.hpp"
#include "polymul/scalar.hpp"
#include "polymul/verify.hpp"
