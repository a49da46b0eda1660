#pragma once

#include "repshift/error.hpp"
#include "repshift/group.hpp"
#include "repshift/words.hpp"
#include "repshift/hnn.hpp"
#include "repshift/shift_graph.hpp"
#include "repshift/dynamics.hpp"
#include "repshift/probe.hpp"
