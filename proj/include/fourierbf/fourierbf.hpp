#pragma once

#include "fourierbf/analysis.hpp"
#include "fourierbf/bilateral.hpp"
#include "fourierbf/cli.hpp"
#include "fourierbf/image.hpp"
#include "fourierbf/kernel_approx.hpp"
#include "fourierbf/kernels.hpp"
#include "fourierbf/pgm.hpp"
#include "fourierbf/spatial.hpp"
