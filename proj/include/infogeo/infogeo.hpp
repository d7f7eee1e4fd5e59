// infogeo.hpp - umbrella header.

#pragma once

#include "infogeo/alpha.hpp"
#include "infogeo/charts.hpp"
#include "infogeo/connections.hpp"
#include "infogeo/measure.hpp"
#include "infogeo/problem_io.hpp"
#include "infogeo/random.hpp"
#include "infogeo/verify.hpp"
#include "infogeo/young.hpp"
