#pragma once

#include "scpm/attribute_index.hpp"
#include "scpm/graph.hpp"
#include "scpm/io.hpp"
#include "scpm/miner.hpp"
#include "scpm/null_model.hpp"
#include "scpm/quasi_clique.hpp"
