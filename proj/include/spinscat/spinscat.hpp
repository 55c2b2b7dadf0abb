#pragma once

#include "spinscat/numkernel.hpp"
#include "spinscat/representations.hpp"
#include "spinscat/equivalence.hpp"
#include "spinscat/planewave.hpp"
#include "spinscat/scattering.hpp"
#include "spinscat/closed_form.hpp"
#include "spinscat/io.hpp"
