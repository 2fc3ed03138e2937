#pragma once

#include "thoma/thoma_num/bounds.hpp"
#include "thoma/thoma_num/exp_poly.hpp"
#include "thoma/thoma_num/generator_chi.hpp"
#include "thoma/thoma_num/limits.hpp"
#include "thoma/thoma_num/point.hpp"
#include "thoma/thoma_num/random_points.hpp"
#include "thoma/thoma_num/signed_log.hpp"
#include "thoma/thoma_num/transforms.hpp"
