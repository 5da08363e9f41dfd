#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "truth_table.hpp"

namespace pigmap
{

/*! \brief Input permutation, input negation and output negation.
 *
 * Applied to `f` it yields `g(x) = o ^ f(z)` with
 * `z_i = x_{perm[i]} ^ neg_i`, where `neg_i` is bit `i` of `input_neg`.
 */
struct npn_transform
{
  std::array<uint8_t, 4> perm{ 0, 1, 2, 3 };
  uint8_t input_neg{0};
  bool output_neg{false};

  bool operator==( npn_transform const& ) const = default;
};

truth_table apply_npn( truth_table const& f, npn_transform const& t );

/*! \brief Visits all `n! * 2^n * 2` transforms on `n <= 4` variables,
 * starting with the identity. */
void for_each_npn_transform( uint32_t num_vars, std::function<void( npn_transform const& )> const& fn );

/*! \brief Exact NPN canonization by exhaustive enumeration.
 *
 * The canonical form is the smallest table reachable by any transform.
 * The returned transform maps the canonical table back onto `tt`, i.e.
 * `apply_npn( canonical, t ) == tt`. Throws for more than 4 variables.
 */
std::pair<truth_table, npn_transform> npn_canonicalize( truth_table const& tt );

/*! \brief All transforms `t` with `apply_npn( f, t ) == g`, in enumeration order. */
std::vector<npn_transform> npn_matches( truth_table const& f, truth_table const& g );

} // namespace pigmap
