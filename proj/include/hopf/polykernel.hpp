#pragma once

#include "hopf/polykernel/monomial.hpp"
#include "hopf/polykernel/polynomial.hpp"
#include "hopf/polykernel/rational.hpp"
#include "hopf/polykernel/ring_context.hpp"
