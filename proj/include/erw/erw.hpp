#pragma once

#include "erw/analysis.hpp"
#include "erw/bbp.hpp"
#include "erw/params.hpp"
#include "erw/rational.hpp"
#include "erw/rng.hpp"
#include "erw/series.hpp"
#include "erw/version.hpp"
#include "erw/stats.hpp"
#include "erw/walk.hpp"
