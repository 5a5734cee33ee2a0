#pragma once

// Umbrella header: exact differential calculus on the incidence algebras of
// finite simplicial complexes, with the universal story envelope, the
// simplicial differential ideal, and the contravariant pullback along
// simplicial maps.

#include "scdga/betti.hpp"
#include "scdga/chain.hpp"
#include "scdga/complex.hpp"
#include "scdga/error.hpp"
#include "scdga/format.hpp"
#include "scdga/incidence.hpp"
#include "scdga/linalg.hpp"
#include "scdga/parse.hpp"
#include "scdga/rational.hpp"
#include "scdga/simplex.hpp"
#include "scdga/story.hpp"
#include "scdga/verify.hpp"
#include "scdga/vertex_map.hpp"
