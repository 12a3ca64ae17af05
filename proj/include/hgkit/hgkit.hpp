#pragma once

#include "hgkit/analytics.hpp"
#include "hgkit/centrality.hpp"
#include "hgkit/community.hpp"
#include "hgkit/datasets.hpp"
#include "hgkit/error.hpp"
#include "hgkit/forecast.hpp"
#include "hgkit/hypergraph.hpp"
#include "hgkit/io.hpp"
#include "hgkit/views.hpp"
