#pragma once

#include "gridflow/admittance.hpp"
#include "gridflow/case_io.hpp"
#include "gridflow/lp.hpp"
#include "gridflow/matrix.hpp"
#include "gridflow/multiperiod.hpp"
#include "gridflow/network.hpp"
#include "gridflow/opf.hpp"
#include "gridflow/powerflow.hpp"
#include "gridflow/report.hpp"
#include "gridflow/scenarios.hpp"
#include "gridflow/types.hpp"
