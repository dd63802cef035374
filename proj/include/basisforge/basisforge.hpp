#pragma once

#include "basisforge/core.hpp"
#include "basisforge/sequence.hpp"
#include "basisforge/convolution.hpp"
#include "basisforge/repfn.hpp"
#include "basisforge/regvar.hpp"
#include "basisforge/prob.hpp"
#include "basisforge/mainthm.hpp"
#include "basisforge/schnirelmann.hpp"
