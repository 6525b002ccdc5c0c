#pragma once

// Umbrella header: pulls in the whole library in dependency order.

#include "gapdim/errors.hpp"
#include "gapdim/log_value.hpp"
#include "gapdim/sequence.hpp"
#include "gapdim/sequence_io.hpp"
#include "gapdim/interval_set.hpp"
#include "gapdim/builders.hpp"
#include "gapdim/dimension_report.hpp"
#include "gapdim/dimensions.hpp"
#include "gapdim/cover.hpp"
#include "gapdim/estimator.hpp"
#include "gapdim/construction.hpp"
