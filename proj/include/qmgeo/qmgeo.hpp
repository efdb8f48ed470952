#pragma once

// Umbrella header for the quasi-metric geometry toolkit.

#include "qmgeo/controls.hpp"
#include "qmgeo/cross_ratio.hpp"
#include "qmgeo/errors.hpp"
#include "qmgeo/generators.hpp"
#include "qmgeo/hyperbolic.hpp"
#include "qmgeo/inversion.hpp"
#include "qmgeo/io.hpp"
#include "qmgeo/maps.hpp"
#include "qmgeo/matrix.hpp"
#include "qmgeo/metrize.hpp"
#include "qmgeo/perfectness.hpp"
#include "qmgeo/sampling.hpp"
#include "qmgeo/space.hpp"
