#pragma once

#include "cremona/classify.hpp"
#include "cremona/clutter.hpp"
#include "cremona/commands.hpp"
#include "cremona/dot.hpp"
#include "cremona/enumerate.hpp"
#include "cremona/error.hpp"
#include "cremona/logmatrix.hpp"
#include "cremona/monomial.hpp"
#include "cremona/parallel.hpp"
#include "cremona/parse.hpp"
#include "cremona/record.hpp"
#include "cremona/symmetry.hpp"
