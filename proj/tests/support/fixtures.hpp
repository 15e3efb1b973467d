#pragma once

#include "honeycomb/constructions.hpp"

namespace fixtures {

using honeycomb::three_vertex_system;

}  // namespace fixtures
