#pragma once

#include "amoeba/dynamics.hpp"
#include "amoeba/error.hpp"
#include "amoeba/harness.hpp"
#include "amoeba/instance.hpp"
#include "amoeba/io.hpp"
#include "amoeba/matrix.hpp"
#include "amoeba/reproduce.hpp"
#include "amoeba/solver.hpp"
