#pragma once

#include "slproj/bench.hpp"
#include "slproj/coords.hpp"
#include "slproj/derivative.hpp"
#include "slproj/errors.hpp"
#include "slproj/io.hpp"
#include "slproj/linalg.hpp"
#include "slproj/matrix.hpp"
#include "slproj/projector.hpp"
#include "slproj/report.hpp"
#include "slproj/solver_bisection.hpp"
#include "slproj/solver_composite.hpp"
#include "slproj/solver_newton.hpp"
#include "slproj/spectrum.hpp"
#include "slproj/testgen.hpp"
