#pragma once

// Canonical geometry of a pair of orthogonal projections: six-subspace
// decomposition, intertwining unitaries, direct rotations, and the
// extremal-distance formula, with seeded generators and residual reports.

#include "projpair/decomposition.hpp"
#include "projpair/harness.hpp"
#include "projpair/intertwine.hpp"
#include "projpair/io.hpp"
#include "projpair/numerics.hpp"
#include "projpair/projection.hpp"
#include "projpair/random.hpp"
#include "projpair/rotation.hpp"
