#pragma once

#include "errors.hpp"
#include "rational.hpp"
#include "poly.hpp"
#include "roots.hpp"
#include "ratfunc.hpp"
#include "local.hpp"
#include "text.hpp"
#include "matrix.hpp"
#include "bundles.hpp"
#include "prinpart.hpp"
#include "sympext.hpp"
#include "graphsub.hpp"
