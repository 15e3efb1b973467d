#pragma once

// Everything except the JSON layer (honeycomb/io.hpp), which needs json.hpp.

#include "honeycomb/constructions.hpp"
#include "honeycomb/deformation.hpp"
#include "honeycomb/duality.hpp"
#include "honeycomb/errors.hpp"
#include "honeycomb/extremality.hpp"
#include "honeycomb/grid.hpp"
#include "honeycomb/honeycomb.hpp"
#include "honeycomb/integralizer.hpp"
#include "honeycomb/legal_path.hpp"
#include "honeycomb/potential.hpp"
#include "honeycomb/rational.hpp"
