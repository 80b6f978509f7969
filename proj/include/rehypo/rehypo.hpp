#pragma once

// Convenience umbrella for the whole library.

#include "rehypo/cascade.hpp"
#include "rehypo/collateral.hpp"
#include "rehypo/edge_list.hpp"
#include "rehypo/errors.hpp"
#include "rehypo/experiment.hpp"
#include "rehypo/network.hpp"
#include "rehypo/pagerank.hpp"
#include "rehypo/parallel.hpp"
#include "rehypo/rng.hpp"
#include "rehypo/solvers.hpp"
#include "rehypo/special_functions.hpp"
#include "rehypo/varhoard.hpp"
