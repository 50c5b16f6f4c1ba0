/**
 * Umbrella header for the absix library.
 */

#ifndef ABSIX_ABSIX_HPP
#define ABSIX_ABSIX_HPP

#include "errors.hpp"
#include "qmat.hpp"
#include "hodge.hpp"
#include "factor.hpp"
#include "atlas.hpp"
#include "atlas_io.hpp"
#include "corpus.hpp"
#include "wss.hpp"
#include "absic.hpp"
#include "plus.hpp"
#include "report.hpp"

#endif
