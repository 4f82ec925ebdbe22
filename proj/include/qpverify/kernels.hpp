#pragma once

// Data-parallel kernels. Each has a serial twin producing bit-identical
// results: work items are evaluated independently into per-item slots and
// combined afterwards in index order.

#include <cstddef>
#include <functional>
#include <vector>

#include "qpverify/contour.hpp"
#include "qpverify/lattice.hpp"

namespace qpv {

enum class Execution { serial, parallel };

/// fn(0), ..., fn(n-1). When items throw, the exception of the lowest
/// index is rethrown after all items have run.
std::vector<Sample> sample_all(std::size_t n, const std::function<Sample(std::size_t)>& fn,
                               Execution ex = Execution::parallel);

/// The truncated sigma product, one lattice row per work item, rows
/// multiplied in order. Matches sigma_product_oracle exactly.
cplx sigma_product(cplx z, const Lattice& lat, int cutoff, Execution ex = Execution::parallel);

}  // namespace qpv
