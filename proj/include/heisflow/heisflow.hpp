#pragma once

#include "heisflow/types.hpp"
#include "heisflow/heisenberg.hpp"
#include "heisflow/surface.hpp"
#include "heisflow/isometries.hpp"
#include "heisflow/ode.hpp"
#include "heisflow/geodesics.hpp"
#include "heisflow/profiles.hpp"
#include "heisflow/parallel.hpp"
#include "heisflow/solitons.hpp"
#include "heisflow/spec_json.hpp"
#include "heisflow/io.hpp"
#include "heisflow/graph_flow.hpp"
#include "heisflow/verify.hpp"
