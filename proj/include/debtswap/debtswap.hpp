// Umbrella header: exact clearing, debt-swap classification, swap-sequence
// schedulers, reachability, benchmark generators, and serialization.
#pragma once

#include "classify.hpp"
#include "clearing.hpp"
#include "dynamics.hpp"
#include "errors.hpp"
#include "gadgets.hpp"
#include "io.hpp"
#include "network.hpp"
#include "rational.hpp"
#include "reach.hpp"
#include "transforms.hpp"
