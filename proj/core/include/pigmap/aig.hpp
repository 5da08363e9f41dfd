#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace pigmap
{

/*! \brief Dense node index. Index 0 is the constant-false node,
 * indices `1..num_pis` are primary inputs, AND nodes follow. */
using node_id = uint32_t;

/*! \brief Edge to a node, optionally complemented (literal encoding). */
struct signal
{
  uint32_t literal{0};

  static constexpr signal make( node_id node, bool complemented = false )
  {
    return signal{ ( node << 1u ) | ( complemented ? 1u : 0u ) };
  }

  constexpr node_id node() const { return literal >> 1u; }
  constexpr bool complemented() const { return literal & 1u; }

  constexpr signal operator!() const { return signal{ literal ^ 1u }; }
  constexpr signal operator^( bool c ) const { return signal{ literal ^ ( c ? 1u : 0u ) }; }

  auto operator<=>( signal const& ) const = default;
};

/*! \brief Immutable combinational and-inverter graph.
 *
 * Fanins of every AND node have strictly smaller indices than the node
 * itself, so ascending index order is a topological order.
 */
class aig
{
public:
  aig() = default;

  /*! \brief Builds a graph from raw parts, validating the index invariants. */
  aig( uint32_t num_pis, std::vector<std::array<signal, 2>> ands, std::vector<signal> outputs );

  uint32_t num_pis() const { return num_pis_; }
  uint32_t num_pos() const { return static_cast<uint32_t>( outputs_.size() ); }
  uint32_t num_ands() const { return static_cast<uint32_t>( ands_.size() ); }
  /*! \brief Constant + PIs + ANDs. */
  uint32_t num_nodes() const { return 1u + num_pis_ + num_ands(); }

  bool is_constant( node_id n ) const { return n == 0u; }
  bool is_pi( node_id n ) const { return n >= 1u && n <= num_pis_; }
  bool is_and( node_id n ) const { return n > num_pis_ && n < num_nodes(); }

  node_id pi_node( uint32_t index ) const { return index + 1u; }
  uint32_t pi_index( node_id n ) const { return n - 1u; }
  node_id first_and() const { return num_pis_ + 1u; }

  std::array<signal, 2> const& fanins( node_id n ) const { return ands_[n - first_and()]; }
  std::span<const signal> outputs() const { return outputs_; }
  std::span<const std::array<signal, 2>> ands() const { return ands_; }

  /*! \brief Number of AND fanin references plus PO references per node. */
  std::vector<uint32_t> fanout_counts() const;

  bool operator==( aig const& ) const = default;

private:
  uint32_t num_pis_{0};
  std::vector<std::array<signal, 2>> ands_;
  std::vector<signal> outputs_;
};

/*! \brief Incremental construction of an aig.
 *
 * Structural hashing is off unless requested: the mapper consumes the
 * graph exactly as produced upstream.
 */
class aig_builder
{
public:
  explicit aig_builder( bool structural_hashing = false ) : strash_( structural_hashing ) {}

  signal constant( bool value ) const { return signal::make( 0u, value ); }

  /*! \brief PIs must all be created before the first AND. */
  signal create_pi();
  signal create_and( signal a, signal b );
  signal create_nand( signal a, signal b ) { return !create_and( a, b ); }
  signal create_or( signal a, signal b ) { return !create_and( !a, !b ); }
  signal create_xor( signal a, signal b );
  signal create_maj( signal a, signal b, signal c );
  void create_po( signal s );

  uint32_t num_pis() const { return num_pis_; }
  uint32_t num_nodes() const { return 1u + num_pis_ + static_cast<uint32_t>( ands_.size() ); }

  aig build() const;

private:
  bool strash_;
  uint32_t num_pis_{0};
  std::vector<std::array<signal, 2>> ands_;
  std::vector<signal> outputs_;
  std::unordered_map<uint64_t, node_id> hash_;
};

/*! \brief PIs in ascending order followed by AND nodes in ascending order. */
std::vector<node_id> topo_order( aig const& g );

struct aig_stats
{
  uint32_t size{0};
  uint32_t depth{0};
  /*! \brief level(const) = 0, level(PI) = 1, level(AND) = 1 + max fanin level. */
  std::vector<uint32_t> levels;
};

aig_stats stats( aig const& g );

/*! \brief Word-parallel simulation: one 64-bit pattern word per PI,
 * returns one word per PO. */
std::vector<uint64_t> simulate_words( aig const& g, std::span<const uint64_t> pi_words );

/*! \brief Simulates every node; entry `n` holds the word of node `n`. */
std::vector<uint64_t> simulate_nodes( aig const& g, std::span<const uint64_t> pi_words );

/*! \brief Bit-vector simulation; every input vector needs `num_pis` entries. */
std::vector<std::vector<bool>> simulate( aig const& g, std::vector<std::vector<bool>> const& input_vectors );

/*! \brief Exhaustive simulation for up to 16 PIs.
 *
 * Returns, per PO, `ceil(2^num_pis / 64)` words where bit `m` of the
 * concatenation is the PO value under minterm `m`.
 */
std::vector<std::vector<uint64_t>> simulate_exhaustive( aig const& g );

} // namespace pigmap
