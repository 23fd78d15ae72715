#pragma once

#include "cqed/dynamics.hpp"

#include <span>
#include <vector>

namespace cqed::detail {

/// Extended-precision finite-bath propagation. `levels` are the distinct
/// system energies and `level_index[k]` maps basis state k onto them.
void finite_bath_extended(const Matrix& rho0, const std::vector<double>& sys_e, const std::vector<double>& levels,
                          const std::vector<std::size_t>& level_index, const FiniteBathSpec& spec,
                          std::span<const double> t_grid, unsigned workers, FiniteBathReport& rep);

} // namespace cqed::detail
