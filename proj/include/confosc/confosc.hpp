#pragma once

#include "confosc/exact.hpp"
#include "confosc/report.hpp"
#include "confosc/parallel.hpp"
#include "confosc/liealg4.hpp"
#include "confosc/fockaux.hpp"
#include "confosc/specfun.hpp"
#include "confosc/oscrep.hpp"
#include "confosc/boostcs.hpp"
#include "confosc/massive.hpp"
#include "confosc/suites.hpp"
