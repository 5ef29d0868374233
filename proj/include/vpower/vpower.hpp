#pragma once

#include "vpower/data_io.hpp"
#include "vpower/errors.hpp"
#include "vpower/eu27.hpp"
#include "vpower/fairness_metrics.hpp"
#include "vpower/game_model.hpp"
#include "vpower/power_engine.hpp"
#include "vpower/quota_sweep.hpp"
#include "vpower/rational.hpp"
