#pragma once

// Aggregate header.

#include "qmetro/errors.hpp"
#include "qmetro/estimate.hpp"
#include "qmetro/hilbert.hpp"
#include "qmetro/io.hpp"
#include "qmetro/metric.hpp"
#include "qmetro/optimize.hpp"
#include "qmetro/povm.hpp"
#include "qmetro/scenarios.hpp"
#include "qmetro/two_sector.hpp"
