#pragma once

#include "honeycomb/bloch.hpp"
#include "honeycomb/dispersive.hpp"
#include "honeycomb/edge.hpp"
#include "honeycomb/errors.hpp"
#include "honeycomb/flatband.hpp"
#include "honeycomb/hep.hpp"
#include "honeycomb/io.hpp"
#include "honeycomb/numeric.hpp"
#include "honeycomb/polyroots.hpp"
#include "honeycomb/version.hpp"
