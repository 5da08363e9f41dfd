#include "pigmap/truth_table.hpp"

#include <stdexcept>

namespace pigmap
{

namespace
{

constexpr uint64_t projections[6] = {
    0xaaaaaaaaaaaaaaaaull, 0xccccccccccccccccull, 0xf0f0f0f0f0f0f0f0ull,
    0xff00ff00ff00ff00ull, 0xffff0000ffff0000ull, 0xffffffff00000000ull };

} // namespace

truth_table truth_table::constant( uint32_t num_vars, bool value )
{
  if ( num_vars > max_vars )
    throw std::invalid_argument( "truth table wider than 6 variables" );
  return { value ? mask_for( num_vars ) : 0u, num_vars };
}

truth_table truth_table::nth_var( uint32_t num_vars, uint32_t var )
{
  if ( num_vars > max_vars || var >= num_vars )
    throw std::invalid_argument( "variable index out of range" );
  return { projections[var] & mask_for( num_vars ), num_vars };
}

bool truth_table::has_var( uint32_t var ) const
{
  const auto shift = 1u << var;
  const auto proj = projections[var] & mask();
  return ( ( bits & proj ) >> shift ) != ( bits & ( ~proj & mask() ) );
}

std::pair<truth_table, std::vector<uint32_t>> shrink_to_support( truth_table const& tt )
{
  std::vector<uint32_t> support;
  for ( auto v = 0u; v < tt.num_vars; ++v )
  {
    if ( tt.has_var( v ) )
      support.push_back( v );
  }
  if ( support.size() == tt.num_vars )
    return { tt, std::move( support ) };

  truth_table res{ 0u, static_cast<uint32_t>( support.size() ) };
  for ( auto i = 0u; i < res.num_bits(); ++i )
  {
    uint32_t index = 0u;
    for ( auto j = 0u; j < support.size(); ++j )
    {
      if ( ( i >> j ) & 1u )
        index |= 1u << support[j];
    }
    if ( tt.get_bit( index ) )
      res.bits |= uint64_t{1} << i;
  }
  return { res, std::move( support ) };
}

std::string to_hex( truth_table const& tt )
{
  static constexpr char digits[] = "0123456789abcdef";
  const auto num_digits = tt.num_vars <= 2u ? 1u : ( 1u << ( tt.num_vars - 2u ) );
  std::string s( num_digits, '0' );
  for ( auto i = 0u; i < num_digits; ++i )
    s[num_digits - 1u - i] = digits[( tt.bits >> ( 4u * i ) ) & 0xfu];
  return s;
}

} // namespace pigmap
