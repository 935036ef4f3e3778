#pragma once

#include "adist/arith_fn.hpp"
#include "adist/dirichlet.hpp"
#include "adist/empirical.hpp"
#include "adist/limit_law.hpp"
#include "adist/series.hpp"
#include "adist/sieve.hpp"
