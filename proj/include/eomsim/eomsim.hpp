#pragma once

#include "eomsim/conversion.hpp"
#include "eomsim/datasets.hpp"
#include "eomsim/dynamics.hpp"
#include "eomsim/errors.hpp"
#include "eomsim/fock.hpp"
#include "eomsim/io.hpp"
#include "eomsim/model.hpp"
#include "eomsim/ode.hpp"
#include "eomsim/propagator.hpp"
#include "eomsim/states.hpp"
#include "eomsim/verify.hpp"
