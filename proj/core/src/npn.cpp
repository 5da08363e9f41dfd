#include "pigmap/npn.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace pigmap
{

namespace
{

void check_width( uint32_t num_vars )
{
  if ( num_vars > 4u )
    throw std::invalid_argument( "NPN canonization supports at most 4 variables, got " + std::to_string( num_vars ) );
}

} // namespace

truth_table apply_npn( truth_table const& f, npn_transform const& t )
{
  check_width( f.num_vars );
  truth_table g{ 0u, f.num_vars };
  for ( auto x = 0u; x < f.num_bits(); ++x )
  {
    uint32_t z = 0u;
    for ( auto i = 0u; i < f.num_vars; ++i )
    {
      const auto bit = ( ( x >> t.perm[i] ) ^ ( t.input_neg >> i ) ) & 1u;
      z |= bit << i;
    }
    if ( f.get_bit( z ) != t.output_neg )
      g.bits |= uint64_t{1} << x;
  }
  return g;
}

void for_each_npn_transform( uint32_t num_vars, std::function<void( npn_transform const& )> const& fn )
{
  check_width( num_vars );
  std::array<uint8_t, 4> perm{ 0, 1, 2, 3 };
  do
  {
    for ( auto neg = 0u; neg < ( 1u << num_vars ); ++neg )
    {
      for ( auto out : { false, true } )
      {
        npn_transform t;
        t.perm = perm;
        t.input_neg = static_cast<uint8_t>( neg );
        t.output_neg = out;
        fn( t );
      }
    }
  } while ( std::next_permutation( perm.begin(), perm.begin() + num_vars ) );
}

std::pair<truth_table, npn_transform> npn_canonicalize( truth_table const& tt )
{
  check_width( tt.num_vars );
  truth_table best = tt;
  for_each_npn_transform( tt.num_vars, [&]( npn_transform const& t ) {
    best = std::min( best, apply_npn( tt, t ) );
  } );

  npn_transform back;
  bool found = false;
  for_each_npn_transform( tt.num_vars, [&]( npn_transform const& t ) {
    if ( !found && apply_npn( best, t ) == tt )
    {
      back = t;
      found = true;
    }
  } );
  return { best, back };
}

std::vector<npn_transform> npn_matches( truth_table const& f, truth_table const& g )
{
  std::vector<npn_transform> res;
  if ( f.num_vars != g.num_vars )
    return res;
  for_each_npn_transform( f.num_vars, [&]( npn_transform const& t ) {
    if ( apply_npn( f, t ) == g )
      res.push_back( t );
  } );
  return res;
}

} // namespace pigmap
