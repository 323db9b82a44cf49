#pragma once

#include "morsecover/core.hpp"
#include "morsecover/space.hpp"
#include "morsecover/box.hpp"
#include "morsecover/planar.hpp"
#include "morsecover/morse_set.hpp"
#include "morsecover/validate.hpp"
#include "morsecover/intersect.hpp"
#include "morsecover/packing.hpp"
#include "morsecover/covering.hpp"
#include "morsecover/satellite_search.hpp"
#include "morsecover/measure.hpp"
#include "morsecover/family.hpp"
#include "morsecover/exhaustion.hpp"
#include "morsecover/parallel.hpp"
#include "morsecover/integrand.hpp"
#include "morsecover/integrate.hpp"
#include "morsecover/diagnostics.hpp"
#include "morsecover/pv.hpp"
#include "morsecover/serialize.hpp"
#include "morsecover/svg.hpp"
