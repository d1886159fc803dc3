#pragma once

#include "idemkit/capacity.hpp"
#include "idemkit/convexity.hpp"
#include "idemkit/density.hpp"
#include "idemkit/error.hpp"
#include "idemkit/io.hpp"
#include "idemkit/isomorphism.hpp"
#include "idemkit/laws.hpp"
#include "idemkit/random.hpp"
#include "idemkit/score.hpp"
#include "idemkit/space.hpp"
