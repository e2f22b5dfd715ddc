#ifndef HARDCOUNT_GENERATE_HPP
#define HARDCOUNT_GENERATE_HPP

#include <cstdint>
#include <string>

#include "hardcount/graph.hpp"

namespace hardcount {

Graph make_path(int n);
Graph make_cycle(int n);
Graph make_grid(int rows, int cols);
Graph make_complete(int n);

// Pairing model with rejection of loops and multi-edges; reproducible from the
// seed.  Requires n*d even and d < n.
Graph make_random_regular(int n, int d, std::uint64_t seed);

// Generator spec strings used by the CLI: "path:N", "cycle:N", "grid:RxC",
// "complete:N", "random_regular:N,D".
Graph generate_from_spec(const std::string& spec, std::uint64_t seed);

} // namespace hardcount

#endif
