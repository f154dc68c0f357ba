#pragma once

// Umbrella header.

#include "opemodel/category.hpp"
#include "opemodel/core.hpp"
#include "opemodel/errors.hpp"
#include "opemodel/factorization.hpp"
#include "opemodel/functors.hpp"
#include "opemodel/generators.hpp"
#include "opemodel/lifting.hpp"
#include "opemodel/perm.hpp"
#include "opemodel/presented.hpp"
#include "opemodel/serialize.hpp"
#include "opemodel/tree.hpp"
