#pragma once

#include "pisg/errors.hpp"
#include "pisg/eval.hpp"
#include "pisg/game.hpp"
#include "pisg/lp.hpp"
#include "pisg/oracle.hpp"
#include "pisg/ratmat.hpp"
#include "pisg/rational.hpp"
#include "pisg/reduction.hpp"
#include "pisg/sim.hpp"
#include "pisg/simplex.hpp"
#include "pisg/smdp.hpp"
