#pragma once

#include "simshape/baselines.hpp"
#include "simshape/calendar.hpp"
#include "simshape/distance.hpp"
#include "simshape/error.hpp"
#include "simshape/evaluation.hpp"
#include "simshape/grid.hpp"
#include "simshape/history_io.hpp"
#include "simshape/ingestion.hpp"
#include "simshape/kernel.hpp"
#include "simshape/predictor.hpp"
#include "simshape/prepared.hpp"
#include "simshape/reference.hpp"
#include "simshape/report_io.hpp"
#include "simshape/segment.hpp"
#include "simshape/serialization.hpp"
#include "simshape/synthetic.hpp"
