#pragma once

#include "sofree/errors.hpp"
#include "sofree/exact_matrix.hpp"
#include "sofree/montecarlo.hpp"
#include "sofree/noncrossing.hpp"
#include "sofree/partition.hpp"
#include "sofree/permutation.hpp"
#include "sofree/polynomial.hpp"
#include "sofree/second_order.hpp"
#include "sofree/trace_word.hpp"
#include "sofree/weingarten.hpp"
