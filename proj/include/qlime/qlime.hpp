#pragma once

// Umbrella header for the whole toolkit.

#include "qlime/corpus.hpp"
#include "qlime/encoder.hpp"
#include "qlime/errors.hpp"
#include "qlime/explain.hpp"
#include "qlime/harness.hpp"
#include "qlime/model.hpp"
#include "qlime/rng.hpp"
#include "qlime/statevec.hpp"
#include "qlime/types.hpp"
