#pragma once

#include "boson_ladder.hpp"
#include "error.hpp"
#include "fermion_spectrum.hpp"
#include "format.hpp"
#include "quantities.hpp"
#include "report.hpp"
#include "table.hpp"
