#pragma once

#include "contractmon/terms.hpp"
#include "contractmon/syntax.hpp"
#include "contractmon/lts.hpp"
#include "contractmon/satisfaction.hpp"
#include "contractmon/testkit.hpp"
#include "contractmon/refinement.hpp"
#include "contractmon/monitoring.hpp"
#include "contractmon/synthesis.hpp"
#include "contractmon/monitorability.hpp"
