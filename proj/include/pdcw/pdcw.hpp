#pragma once

// Spectral-temporal structure of pulsed parametric downconversion:
// complex Gaussian joint spectral amplitude, exact 4-D chronocyclic Wigner
// function, single-photon Wigner functions, and entanglement measures
// (Schmidt cooperativity K, inverse conditioned time-bandwidth product).

#include "pdcw/analysis.hpp"
#include "pdcw/entanglement.hpp"
#include "pdcw/errors.hpp"
#include "pdcw/grid.hpp"
#include "pdcw/jsa.hpp"
#include "pdcw/log.hpp"
#include "pdcw/manifest.hpp"
#include "pdcw/process.hpp"
#include "pdcw/quadrature.hpp"
#include "pdcw/serialize.hpp"
#include "pdcw/units.hpp"
#include "pdcw/version.hpp"
#include "pdcw/wigner.hpp"
