#pragma once

#include "noisecrypt/chaos.hpp"
#include "noisecrypt/error.hpp"
#include "noisecrypt/grid.hpp"
#include "noisecrypt/key_schedule.hpp"
#include "noisecrypt/metrics.hpp"
#include "noisecrypt/pgm.hpp"
#include "noisecrypt/pipeline.hpp"
#include "noisecrypt/sbox.hpp"
