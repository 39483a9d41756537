#pragma once

#include <cstddef>
#include <cstdint>

#include "rst/graph.hpp"

namespace rst::gen {

Graph path(std::size_t n);
Graph cycle(std::size_t n);
Graph complete(std::size_t n);
Graph star(std::size_t leaves);
Graph complete_bipartite(std::size_t a, std::size_t b);
/// rows x cols lattice; vertex (r, c) has id r * cols + c.
Graph grid(std::size_t rows, std::size_t cols);
/// Clique on 0..clique-1 with a path of tail vertices hanging off clique-1.
Graph lollipop(std::size_t clique, std::size_t tail);
/// G(n, p) redrawn until connected.
Graph erdos_renyi_connected(std::size_t n, double p, std::uint64_t seed);

}  // namespace rst::gen
