#ifndef K3FM_K3FM_HPP
#define K3FM_K3FM_HPP

#include "k3fm/arith.hpp"
#include "k3fm/discforms.hpp"
#include "k3fm/error.hpp"
#include "k3fm/genus.hpp"
#include "k3fm/lagrangians.hpp"
#include "k3fm/lattices.hpp"
#include "k3fm/surfaces.hpp"

#endif // K3FM_K3FM_HPP
