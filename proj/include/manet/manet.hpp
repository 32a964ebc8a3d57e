#ifndef MANET_MANET_HPP
#define MANET_MANET_HPP

#include "manet/bench.hpp"
#include "manet/comanet.hpp"
#include "manet/errors.hpp"
#include "manet/geometry.hpp"
#include "manet/netgen.hpp"
#include "manet/network.hpp"
#include "manet/render.hpp"
#include "manet/solution.hpp"
#include "manet/solver.hpp"

#endif // MANET_MANET_HPP
