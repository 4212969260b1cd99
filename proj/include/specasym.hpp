#pragma once

#include "specasym/compensated_sum.hpp"
#include "specasym/errors.hpp"
#include "specasym/exact.hpp"
#include "specasym/expansion.hpp"
#include "specasym/fitkit.hpp"
#include "specasym/invariants.hpp"
#include "specasym/moments.hpp"
#include "specasym/riesz.hpp"
#include "specasym/spectra.hpp"
#include "specasym/test_functions.hpp"
#include "specasym/traces.hpp"
