#pragma once

#include "ucb/acceptance.hpp"
#include "ucb/charging.hpp"
#include "ucb/depth.hpp"
#include "ucb/errors.hpp"
#include "ucb/family.hpp"
#include "ucb/family_io.hpp"
#include "ucb/geom.hpp"
#include "ucb/graph.hpp"
#include "ucb/report.hpp"
#include "ucb/sampling.hpp"
#include "ucb/validation.hpp"
#include "ucb/version.hpp"
