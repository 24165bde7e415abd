#pragma once

// Umbrella header: the full solver stack.

#include "rmhd/core.hpp"
#include "rmhd/physics.hpp"
#include "rmhd/recovery.hpp"
#include "rmhd/linalg.hpp"
#include "rmhd/jacobians.hpp"
#include "rmhd/ec_flux.hpp"
#include "rmhd/high_order.hpp"
#include "rmhd/reconstruct.hpp"
#include "rmhd/dissipation.hpp"
#include "rmhd/solver.hpp"
#include "rmhd/problems.hpp"
#include "rmhd/driver.hpp"
#include "rmhd/output.hpp"
