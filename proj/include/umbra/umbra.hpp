#pragma once

#include "umbra/action.hpp"
#include "umbra/combinatorics.hpp"
#include "umbra/dsl.hpp"
#include "umbra/engine.hpp"
#include "umbra/errors.hpp"
#include "umbra/identities.hpp"
#include "umbra/polynomial.hpp"
#include "umbra/rational.hpp"
#include "umbra/sequences.hpp"
#include "umbra/series.hpp"
