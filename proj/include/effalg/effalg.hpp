#pragma once

#include "effalg/criteria.hpp"
#include "effalg/criteria_suite.hpp"
#include "effalg/errors.hpp"
#include "effalg/generators.hpp"
#include "effalg/io.hpp"
#include "effalg/matcore.hpp"
#include "effalg/phase_family.hpp"
#include "effalg/quantum.hpp"
#include "effalg/rng.hpp"
#include "effalg/sampler.hpp"
#include "effalg/search.hpp"
#include "effalg/seqprod.hpp"
#include "effalg/suites.hpp"
