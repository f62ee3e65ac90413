#pragma once

// Exact predictive and population inference for finite exchangeable
// sequences over finite label sets, with certified total-variation bounds
// for the add-one-smoothing approximation.

#include "finexch/approx.hpp"
#include "finexch/barchart.hpp"
#include "finexch/cli.hpp"
#include "finexch/combinat.hpp"
#include "finexch/distribution.hpp"
#include "finexch/errors.hpp"
#include "finexch/linear_feasibility.hpp"
#include "finexch/logreal.hpp"
#include "finexch/model.hpp"
#include "finexch/numeric.hpp"
#include "finexch/oracle.hpp"
#include "finexch/population.hpp"
#include "finexch/prior_io.hpp"
#include "finexch/rational.hpp"
#include "finexch/suites.hpp"
#include "finexch/survey.hpp"
