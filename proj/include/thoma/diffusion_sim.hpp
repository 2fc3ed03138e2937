#pragma once

#include "thoma/diffusion_sim/dynamics.hpp"
#include "thoma/diffusion_sim/output.hpp"
#include "thoma/diffusion_sim/rng.hpp"
#include "thoma/diffusion_sim/simulate.hpp"
