// fermidicke.hpp — umbrella header for the whole library
#pragma once

#include "fermidicke/analytics.hpp"
#include "fermidicke/basis.hpp"
#include "fermidicke/collective.hpp"
#include "fermidicke/estimators.hpp"
#include "fermidicke/lindblad.hpp"
#include "fermidicke/moments.hpp"
#include "fermidicke/ode.hpp"
#include "fermidicke/sector_graph.hpp"
#include "fermidicke/site_operators.hpp"
#include "fermidicke/sparse.hpp"
#include "fermidicke/states.hpp"
#include "fermidicke/statistics.hpp"
#include "fermidicke/trajectory.hpp"
