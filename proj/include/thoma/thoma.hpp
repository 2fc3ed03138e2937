#pragma once

#include "thoma/cli/config.hpp"
#include "thoma/cli/expr.hpp"
#include "thoma/cli/report.hpp"
#include "thoma/diffusion_sim.hpp"
#include "thoma/operators/generator.hpp"
#include "thoma/operators/natural_ops.hpp"
#include "thoma/operators/shifted.hpp"
#include "thoma/operators/verify.hpp"
#include "thoma/poly_core/coeff.hpp"
#include "thoma/poly_core/format.hpp"
#include "thoma/poly_core/natural.hpp"
#include "thoma/poly_core/polynomial.hpp"
#include "thoma/thoma_num.hpp"
#include "thoma/version.hpp"
