#pragma once

#include "azumaya/config.hpp"
#include "azumaya/matalg/matrix.hpp"
#include "azumaya/matalg/star_hom.hpp"
#include "azumaya/matalg/algebra.hpp"
#include "azumaya/simplicial/smith.hpp"
#include "azumaya/simplicial/complex.hpp"
#include "azumaya/simplicial/cochain.hpp"
#include "azumaya/simplicial/cohomology.hpp"
#include "azumaya/cech/pu_cocycle.hpp"
#include "azumaya/cech/groupoid_cocycle.hpp"
#include "azumaya/invariants/loops.hpp"
#include "azumaya/invariants/brauer.hpp"
