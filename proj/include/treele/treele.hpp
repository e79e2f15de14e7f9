#pragma once

#include "treele/bounds.hpp"
#include "treele/charpoly.hpp"
#include "treele/enumerate.hpp"
#include "treele/error.hpp"
#include "treele/families.hpp"
#include "treele/inertia.hpp"
#include "treele/io.hpp"
#include "treele/numeric.hpp"
#include "treele/poly.hpp"
#include "treele/spectrum.hpp"
#include "treele/tree.hpp"
#include "treele/verify.hpp"
