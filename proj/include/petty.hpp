#pragma once

#include "petty/error.hpp"
#include "petty/vec.hpp"
#include "petty/sphere_grid.hpp"
#include "petty/planar.hpp"
#include "petty/surface_measure.hpp"
#include "petty/columns.hpp"
#include "petty/polygon.hpp"
#include "petty/box_union.hpp"
#include "petty/convex.hpp"
#include "petty/projection.hpp"
#include "petty/random.hpp"
#include "petty/driver.hpp"
