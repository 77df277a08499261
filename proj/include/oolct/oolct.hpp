#pragma once

// Umbrella header: octonion algebra, sampled fields, the 3D octonion
// offset linear canonical transform, and the uncertainty-inequality
// verification toolkit.

#include "oolct/algebra.hpp"
#include "oolct/grid.hpp"
#include "oolct/inequalities.hpp"
#include "oolct/io.hpp"
#include "oolct/signals.hpp"
#include "oolct/special_functions.hpp"
#include "oolct/transform.hpp"
