#pragma once

#include "wsnsim/domain.hpp"
#include "wsnsim/environment.hpp"
#include "wsnsim/filter.hpp"
#include "wsnsim/gateway.hpp"
#include "wsnsim/inference.hpp"
#include "wsnsim/metrics.hpp"
#include "wsnsim/overlay.hpp"
#include "wsnsim/planner.hpp"
#include "wsnsim/rng.hpp"
#include "wsnsim/scenario.hpp"
#include "wsnsim/simulation.hpp"
#include "wsnsim/wsn.hpp"
