#pragma once

// Umbrella header for the qsw workbench.

#include "qsw/config.hpp"
#include "qsw/fock.hpp"
#include "qsw/jacobi.hpp"
#include "qsw/loss.hpp"
#include "qsw/metrology.hpp"
#include "qsw/pamp.hpp"
#include "qsw/profile.hpp"
#include "qsw/reproduce.hpp"
#include "qsw/serialize.hpp"
#include "qsw/util.hpp"
#include "qsw/worstcase.hpp"
