#pragma once

#include "kdnls/field.hpp"

#include <functional>
#include <span>

namespace kdnls {

/// Pointwise product of 2..5 factors on a shared grid, evaluated as a chain
/// of binary products. Each binary product runs on a 3/2-padded grid and is
/// truncated back to the original mode set, so it is alias-free whenever the
/// factors are resolved.
Field dealiased_product(std::span<const Field> factors);
Field dealiased_product(const Field& a, const Field& b);
Field dealiased_product(const Field& a, const Field& b, const Field& c);

/// |u|² = u·conj(u), dealiased.
Field abs_squared(const Field& u);

/// Trilinear product a·b·c with no intermediate truncation (evaluated on a
/// 4N grid, so the full convolution is exact), truncated to the input grid.
/// Used by the resonant decomposition, where diagonal corrections must match
/// the untruncated convolution.
Field exact_triple_product(const Field& a, const Field& b, const Field& c);

/// Evaluate f pointwise on the 3/2-padded physical grid and truncate back.
/// Used for gauge exponentials, which are not band-limited.
Field map_on_padded_grid(const Field& u, const std::function<cd(cd)>& f);

/// True when the KDNLS_DISABLE_DEALIASING environment switch is set; binary
/// products then run unpadded (diagnostic mutation for the verify suite).
bool dealiasing_disabled();

} // namespace kdnls
