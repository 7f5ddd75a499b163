#pragma once

// Umbrella header: the whole kernel in one include.

#include "itsets/bignat.hpp"
#include "itsets/bisim.hpp"
#include "itsets/errors.hpp"
#include "itsets/formula.hpp"
#include "itsets/gen.hpp"
#include "itsets/literal.hpp"
#include "itsets/model.hpp"
#include "itsets/mset.hpp"
#include "itsets/proof_enum.hpp"
#include "itsets/set_ops.hpp"
#include "itsets/vset.hpp"
