#pragma once

#include "oscchain/chain.hpp"
#include "oscchain/chebyshev.hpp"
#include "oscchain/commutant.hpp"
#include "oscchain/dynamics.hpp"
#include "oscchain/eigensolver.hpp"
#include "oscchain/exact.hpp"
#include "oscchain/matrix.hpp"
#include "oscchain/serialize.hpp"
#include "oscchain/spectra.hpp"
#include "oscchain/symmetry.hpp"
#include "oscchain/verify.hpp"
