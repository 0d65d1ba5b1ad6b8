#pragma once

#include "polarmax/analysis.hpp"
#include "polarmax/dynamics.hpp"
#include "polarmax/geometry.hpp"
#include "polarmax/init.hpp"
#include "polarmax/model.hpp"
