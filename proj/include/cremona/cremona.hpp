#pragma once

#include "cremona/classical.hpp"
#include "cremona/curve.hpp"
#include "cremona/dynamics.hpp"
#include "cremona/exprio.hpp"
#include "cremona/map.hpp"
