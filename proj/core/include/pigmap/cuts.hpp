#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "aig.hpp"
#include "truth_table.hpp"

namespace pigmap
{

/*! \brief A cut of `root` together with its function and its pins.
 *
 * The function is expressed over `leaves` in ascending order (leaf 0 is
 * variable 0). Pins are the root plus the parents of leaves inside the
 * cone, sorted and without duplicates; the mapper places a matched cell
 * at the mean position of its cut's pins.
 */
struct cut
{
  std::vector<node_id> leaves;
  node_id root{0};
  truth_table function;
  std::vector<node_id> pins;

  uint32_t size() const { return static_cast<uint32_t>( leaves.size() ); }
  bool is_trivial() const { return leaves.size() == 1u && leaves[0] == root; }
};

struct cut_params
{
  /*! \brief Maximum number of leaves, 2..6. */
  uint32_t k{4};
  /*! \brief Maximum number of non-trivial priority cuts kept per node;
   * the trivial cut is stored in addition. */
  uint32_t cut_limit{16};
  /*! \brief Recursion limit for pin search. */
  uint32_t pin_depth{5};

  static constexpr uint32_t unlimited = std::numeric_limits<uint32_t>::max();
};

/*! \brief Per-node cut sets. Entry 0 of every set is the trivial cut. */
class cut_set
{
public:
  cut_set() = default;
  explicit cut_set( std::vector<std::vector<cut>> cuts ) : cuts_( std::move( cuts ) ) {}

  std::span<const cut> cuts( node_id n ) const { return cuts_[n]; }
  uint32_t num_nodes() const { return static_cast<uint32_t>( cuts_.size() ); }
  size_t total_cuts() const;

private:
  std::vector<std::vector<cut>> cuts_;
};

/*! \brief Enumerates k-feasible priority cuts bottom-up.
 *
 * Cuts of an AND node are pairwise merges of its fanins' cuts (trivial
 * cuts included) with at most `k` leaves. Cuts whose leaf set is a
 * superset of another cut's are dropped. The survivors are ordered by
 * leaf count, then by the sum of leaf levels, then lexicographically,
 * and truncated to `cut_limit`. Truth tables and pins are filled in.
 *
 * The constant node and PIs only have their trivial cut.
 */
cut_set enumerate_cuts( aig const& g, cut_params const& ps );

/*! \brief Function of `root` over `leaves` (ascending), complemented edges
 * included. Throws for more than 6 leaves or if `leaves` is not a cut. */
truth_table cut_truth_table( aig const& g, std::span<const node_id> leaves, node_id root );

/*! \brief Collects the pins of a cut.
 *
 * Starting at the root (always a pin), fanins are visited recursively.
 * A fanin that is a leaf makes the visiting node a pin. Descending below
 * `depth_limit` levels stops the search and records the frontier node as
 * a pin instead. The result is sorted and deduplicated.
 */
std::vector<node_id> search_pins( aig const& g, node_id root, std::span<const node_id> leaves, uint32_t depth_limit );

} // namespace pigmap
