#pragma once

#include "combicalc/calculus.hpp"
#include "combicalc/catalog.hpp"
#include "combicalc/cohomology.hpp"
#include "combicalc/exact.hpp"
#include "combicalc/fields.hpp"
#include "combicalc/io.hpp"
#include "combicalc/mesh.hpp"
#include "combicalc/paths.hpp"
#include "combicalc/pullback.hpp"
#include "combicalc/quadrature.hpp"
#include "combicalc/refine.hpp"
#include "combicalc/smooth.hpp"
#include "combicalc/suite.hpp"
#include "combicalc/types.hpp"
