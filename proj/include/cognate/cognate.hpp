#pragma once

// Umbrella header: Boolean-function analysis, cognate ensembles,
// constrained search, substitution tables, and priority-based selection.

#include "cognate/ahp.hpp"
#include "cognate/bitvec.hpp"
#include "cognate/constraints.hpp"
#include "cognate/ensemble.hpp"
#include "cognate/errors.hpp"
#include "cognate/properties.hpp"
#include "cognate/rng.hpp"
#include "cognate/sbox.hpp"
#include "cognate/search.hpp"
#include "cognate/transforms.hpp"
#include "cognate/truth_table.hpp"
#include "cognate/version.hpp"
