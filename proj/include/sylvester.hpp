#pragma once

// Umbrella header for the library.

#include "sylvester/anglesums.hpp"
#include "sylvester/distribution.hpp"
#include "sylvester/errors.hpp"
#include "sylvester/geomc.hpp"
#include "sylvester/output.hpp"
#include "sylvester/quad.hpp"
#include "sylvester/registry.hpp"
#include "sylvester/rng.hpp"
#include "sylvester/specfun.hpp"
#include "sylvester/sylvester.hpp"
#include "sylvester/verify.hpp"
