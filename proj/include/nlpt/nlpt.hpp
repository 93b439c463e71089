#pragma once

#include "nlpt/bounds_lab.hpp"
#include "nlpt/common.hpp"
#include "nlpt/experiments.hpp"
#include "nlpt/functional.hpp"
#include "nlpt/geometry.hpp"
#include "nlpt/io.hpp"
#include "nlpt/kernel_exact.hpp"
#include "nlpt/kernel_quad.hpp"
#include "nlpt/profiles.hpp"
