#pragma once

#include "floodrisk/ahp.hpp"
#include "floodrisk/error.hpp"
#include "floodrisk/indicators.hpp"
#include "floodrisk/raster.hpp"
#include "floodrisk/risk.hpp"
#include "floodrisk/terrain.hpp"
#include "floodrisk/validation.hpp"
