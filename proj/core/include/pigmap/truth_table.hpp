#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace pigmap
{

/*! \brief Truth table over at most 6 variables packed into one word.
 *
 * Bit `i` holds the function value for the input assignment whose
 * binary encoding is `i` (variable 0 is the least significant bit).
 * Bits above `2^num_vars` are always zero.
 */
struct truth_table
{
  uint64_t bits{0};
  uint32_t num_vars{0};

  static constexpr uint32_t max_vars = 6u;

  static constexpr uint64_t mask_for( uint32_t num_vars )
  {
    return num_vars >= 6u ? ~uint64_t{0} : ( ( uint64_t{1} << ( uint64_t{1} << num_vars ) ) - 1u );
  }

  static truth_table constant( uint32_t num_vars, bool value );
  static truth_table nth_var( uint32_t num_vars, uint32_t var );

  uint64_t mask() const { return mask_for( num_vars ); }
  uint32_t num_bits() const { return 1u << num_vars; }
  bool get_bit( uint32_t index ) const { return ( bits >> index ) & 1u; }

  bool has_var( uint32_t var ) const;

  truth_table operator~() const { return { ~bits & mask(), num_vars }; }
  truth_table operator&( truth_table const& other ) const { return { bits & other.bits, num_vars }; }
  truth_table operator|( truth_table const& other ) const { return { bits | other.bits, num_vars }; }
  truth_table operator^( truth_table const& other ) const { return { bits ^ other.bits, num_vars }; }

  auto operator<=>( truth_table const& ) const = default;
};

/*! \brief Removes variables the function does not depend on.
 *
 * Returns the shrunk table and, for each of its variables, the index of
 * the corresponding variable in the original table.
 */
std::pair<truth_table, std::vector<uint32_t>> shrink_to_support( truth_table const& tt );

std::string to_hex( truth_table const& tt );

} // namespace pigmap

template<>
struct std::hash<pigmap::truth_table>
{
  size_t operator()( pigmap::truth_table const& tt ) const noexcept
  {
    return std::hash<uint64_t>{}( tt.bits * 0x9e3779b97f4a7c15ull + tt.num_vars );
  }
};
