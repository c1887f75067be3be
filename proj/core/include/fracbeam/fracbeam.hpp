#pragma once

#include "fracbeam/beammodel.hpp"
#include "fracbeam/csv.hpp"
#include "fracbeam/cubic.hpp"
#include "fracbeam/errors.hpp"
#include "fracbeam/fracops.hpp"
#include "fracbeam/lintegrate.hpp"
#include "fracbeam/mms.hpp"
#include "fracbeam/rheology.hpp"
#include "fracbeam/version.hpp"
