#pragma once

#include "ottone/conventions.hpp"
#include "ottone/cycle.hpp"
#include "ottone/fock_oracle.hpp"
#include "ottone/gaussian.hpp"
#include "ottone/interp.hpp"
#include "ottone/optimize.hpp"
#include "ottone/protocol.hpp"
#include "ottone/reservoir.hpp"
#include "ottone/rng.hpp"
#include "ottone/second_law.hpp"
#include "ottone/validate.hpp"
