#pragma once

#include "pmfde/barenblatt.hpp"
#include "pmfde/config.hpp"
#include "pmfde/csv.hpp"
#include "pmfde/errors.hpp"
#include "pmfde/estimates.hpp"
#include "pmfde/grid.hpp"
#include "pmfde/harness.hpp"
#include "pmfde/lemma_fuzz.hpp"
#include "pmfde/mollify.hpp"
#include "pmfde/params.hpp"
#include "pmfde/quadrature.hpp"
#include "pmfde/scalar_inequalities.hpp"
#include "pmfde/solver.hpp"
#include "pmfde/trajectory.hpp"
