#pragma once

#include "dualfit/errors.hpp"
#include "dualfit/fit.hpp"
#include "dualfit/objective.hpp"
#include "dualfit/oracle.hpp"
#include "dualfit/polynomial.hpp"
#include "dualfit/stats.hpp"
