#pragma once

#include "fanobott/enumeration.hpp"
#include "fanobott/error.hpp"
#include "fanobott/fan.hpp"
#include "fanobott/lattice.hpp"
#include "fanobott/tower.hpp"
