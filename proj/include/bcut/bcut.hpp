#pragma once

#include "real.hpp"
#include "poly.hpp"
#include "quadrature.hpp"
#include "specialfn.hpp"
#include "potentials.hpp"
#include "equilibrium.hpp"
#include "critical.hpp"
#include "modelchain.hpp"
#include "asymptotics.hpp"
#include "oracle.hpp"
#include "io.hpp"
#include "scan.hpp"
