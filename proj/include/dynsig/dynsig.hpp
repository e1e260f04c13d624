#pragma once

#include "dynsig/decision.hpp"
#include "dynsig/dominance.hpp"
#include "dynsig/dynamic_signal.hpp"
#include "dynsig/errors.hpp"
#include "dynsig/fixtures.hpp"
#include "dynsig/instance_gen.hpp"
#include "dynsig/interval_set.hpp"
#include "dynsig/json_io.hpp"
#include "dynsig/rational.hpp"
#include "dynsig/signal.hpp"
#include "dynsig/svg.hpp"
