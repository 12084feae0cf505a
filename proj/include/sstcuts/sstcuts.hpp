#pragma once

// Umbrella header.

#include "sstcuts/automorphism.hpp"
#include "sstcuts/errors.hpp"
#include "sstcuts/graph.hpp"
#include "sstcuts/group.hpp"
#include "sstcuts/json_io.hpp"
#include "sstcuts/permutation.hpp"
#include "sstcuts/presolve.hpp"
#include "sstcuts/solver.hpp"
#include "sstcuts/sst.hpp"
#include "sstcuts/tp_forest.hpp"
#include "sstcuts/tu.hpp"
