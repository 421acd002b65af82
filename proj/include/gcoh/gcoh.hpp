#pragma once

#include "gcoh/ap_cache.hpp"
#include "gcoh/bratteli.hpp"
#include "gcoh/coherence.hpp"
#include "gcoh/contfrac.hpp"
#include "gcoh/elliptic.hpp"
#include "gcoh/groupalg.hpp"
#include "gcoh/hecke_cm.hpp"
#include "gcoh/lfunction.hpp"
#include "gcoh/quadfield.hpp"
#include "gcoh/serialize.hpp"
