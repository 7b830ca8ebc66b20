#pragma once

#include "qindex/bounds.hpp"
#include "qindex/combinatorics.hpp"
#include "qindex/construct.hpp"
#include "qindex/graph.hpp"
#include "qindex/graph6.hpp"
#include "qindex/report_io.hpp"
#include "qindex/search.hpp"
#include "qindex/spectral.hpp"
