#pragma once

#include "tickmoments/core_model.hpp"
#include "tickmoments/csv_io.hpp"
#include "tickmoments/errors.hpp"
#include "tickmoments/hierarchy.hpp"
#include "tickmoments/moments.hpp"
#include "tickmoments/pipeline.hpp"
#include "tickmoments/returns.hpp"
#include "tickmoments/risk.hpp"
#include "tickmoments/summation.hpp"
#include "tickmoments/synthgen.hpp"
