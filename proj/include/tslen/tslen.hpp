#pragma once

// Umbrella header for the tslen time-series length-normalization library.

#include "tslen/dataset_io.hpp"
#include "tslen/dtw.hpp"
#include "tslen/eval.hpp"
#include "tslen/ngw.hpp"
#include "tslen/normalizers.hpp"
#include "tslen/resample.hpp"
#include "tslen/time_series.hpp"
