#pragma once

#include "bqpvol/errors.hpp"
#include "bqpvol/numbers.hpp"
#include "bqpvol/graph.hpp"
#include "bqpvol/io.hpp"
#include "bqpvol/poset.hpp"
#include "bqpvol/formulas.hpp"
#include "bqpvol/polytope.hpp"
#include "bqpvol/mc.hpp"
#include "bqpvol/separation.hpp"
