#pragma once

#include "fusionscale/cliques.hpp"
#include "fusionscale/experiment.hpp"
#include "fusionscale/geograph.hpp"
#include "fusionscale/geometry.hpp"
#include "fusionscale/placement.hpp"
#include "fusionscale/policies.hpp"
#include "fusionscale/scaling.hpp"
