#pragma once

// Umbrella header.

#include "drg/certificate.hpp"
#include "drg/classical.hpp"
#include "drg/closure.hpp"
#include "drg/core.hpp"
#include "drg/families.hpp"
#include "drg/gf.hpp"
#include "drg/graph.hpp"
#include "drg/intersection.hpp"
#include "drg/io.hpp"
#include "drg/spectral.hpp"
