#ifndef DGK_DGK_HPP
#define DGK_DGK_HPP

#include "dgk/snf.hpp"
#include "dgk/homology.hpp"
#include "dgk/graph.hpp"
#include "dgk/graph_io.hpp"
#include "dgk/pair.hpp"
#include "dgk/constraints.hpp"
#include "dgk/enumeration.hpp"
#include "dgk/replay.hpp"

#endif  // DGK_DGK_HPP
