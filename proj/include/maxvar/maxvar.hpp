#pragma once

#include "maxvar/bounds.hpp"
#include "maxvar/errors.hpp"
#include "maxvar/maximal.hpp"
#include "maxvar/peaks.hpp"
#include "maxvar/rational.hpp"
#include "maxvar/search.hpp"
#include "maxvar/sequence.hpp"
#include "maxvar/variation.hpp"
#include "maxvar/verify.hpp"
#include "maxvar/witness_check.hpp"
#include "maxvar/witnesses.hpp"
