#ifndef RRSURF_RRSURF_HPP
#define RRSURF_RRSURF_HPP

// Umbrella header for the library. The command-line front end lives in cli.hpp.

#include "rrsurf/cohomology.hpp"
#include "rrsurf/error.hpp"
#include "rrsurf/fields.hpp"
#include "rrsurf/fixtures.hpp"
#include "rrsurf/flags.hpp"
#include "rrsurf/linalg.hpp"
#include "rrsurf/measures.hpp"
#include "rrsurf/mpoly.hpp"
#include "rrsurf/parse.hpp"
#include "rrsurf/report.hpp"
#include "rrsurf/residues.hpp"
#include "rrsurf/series.hpp"
#include "rrsurf/surface.hpp"
#include "rrsurf/symbols.hpp"
#include "rrsurf/upoly.hpp"
#include "rrsurf/verify.hpp"

#endif  // RRSURF_RRSURF_HPP
