#pragma once

#include "nonlocal/config.hpp"
#include "nonlocal/contour.hpp"
#include "nonlocal/csv.hpp"
#include "nonlocal/errors.hpp"
#include "nonlocal/operators.hpp"
#include "nonlocal/oracle.hpp"
#include "nonlocal/profiles.hpp"
#include "nonlocal/quadrature.hpp"
#include "nonlocal/run.hpp"
#include "nonlocal/solver.hpp"
#include "nonlocal/weight.hpp"
