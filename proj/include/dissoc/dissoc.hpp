#pragma once

#include "dissoc/analytic1d.hpp"
#include "dissoc/errors.hpp"
#include "dissoc/functional.hpp"
#include "dissoc/grid.hpp"
#include "dissoc/minimizer.hpp"
#include "dissoc/model.hpp"
#include "dissoc/parallel.hpp"
#include "dissoc/solver1d.hpp"
#include "dissoc/solver3d.hpp"
#include "dissoc/two_particle.hpp"
