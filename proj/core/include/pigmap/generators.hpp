#pragma once

#include <cstdint>

#include "aig.hpp"

namespace pigmap
{

/*! \brief Seeded random AIG.
 *
 * Fanins are drawn from all earlier nodes with a bias towards recent
 * ones, never both from the same node; complements are random. POs are
 * taken from the last AND nodes, plus random picks if there are more
 * POs than ANDs.
 */
aig random_aig( uint32_t num_pis, uint32_t num_ands, uint32_t num_pos, uint64_t seed );

/*! \brief `bits`-bit ripple-carry adder: `2 * bits` PIs, `bits + 1` POs. */
aig ripple_carry_adder( uint32_t bits );

/*! \brief `bits` x `bits` array multiplier: `2 * bits` PIs, `2 * bits` POs. */
aig array_multiplier( uint32_t bits );

} // namespace pigmap
