#pragma once

#include "sentigraph/errors.hpp"
#include "sentigraph/estimation.hpp"
#include "sentigraph/evalkit.hpp"
#include "sentigraph/factor_model.hpp"
#include "sentigraph/graph.hpp"
#include "sentigraph/graph_io.hpp"
#include "sentigraph/inference.hpp"
#include "sentigraph/influence.hpp"
#include "sentigraph/labeling.hpp"
#include "sentigraph/model_params.hpp"
#include "sentigraph/pipeline.hpp"
#include "sentigraph/rng.hpp"
#include "sentigraph/synthgen.hpp"
