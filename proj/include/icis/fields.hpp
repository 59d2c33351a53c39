#pragma once

#include "icis/ratfun.hpp"
#include "icis/scalar.hpp"

// Coefficient fields the engine is instantiated for: exact rationals, a word-size prime
// field, and rational-function fields over either (generic parameter values).
#define ICIS_FOR_EACH_FIELD(X) \
  X(::icis::Rational)          \
  X(::icis::ModP)              \
  X(::icis::RatFun<::icis::Rational>) \
  X(::icis::RatFun<::icis::ModP>)
