#include "pigmap/generators.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace pigmap
{

aig random_aig( uint32_t num_pis, uint32_t num_ands, uint32_t num_pos, uint64_t seed )
{
  if ( num_pis < 2u && num_ands > 0u )
    throw std::invalid_argument( "random AIGs with AND nodes need at least 2 PIs" );

  std::mt19937_64 rng( seed );
  aig_builder b;
  for ( auto i = 0u; i < num_pis; ++i )
    b.create_pi();

  auto pick = [&]( uint32_t available ) {
    /* half of the picks come from the most recent 8 nodes */
    if ( available > 8u && rng() % 2u == 0u )
      return available - 1u - static_cast<uint32_t>( rng() % 8u );
    return static_cast<uint32_t>( rng() % available );
  };

  for ( auto i = 0u; i < num_ands; ++i )
  {
    const auto available = b.num_nodes() - 1u;
    const auto a = 1u + pick( available );
    auto c = 1u + pick( available );
    while ( c == a )
      c = 1u + static_cast<uint32_t>( rng() % available );
    b.create_and( signal::make( a, rng() % 2u ), signal::make( c, rng() % 2u ) );
  }

  const auto total = b.num_nodes();
  for ( auto j = 0u; j < num_pos; ++j )
  {
    node_id n;
    if ( j < num_ands )
      n = total - 1u - j;
    else
      n = 1u + static_cast<uint32_t>( rng() % ( total - 1u ) );
    b.create_po( signal::make( n, rng() % 2u ) );
  }
  return b.build();
}

aig ripple_carry_adder( uint32_t bits )
{
  aig_builder b( true );
  std::vector<signal> xs, ys;
  for ( auto i = 0u; i < bits; ++i )
    xs.push_back( b.create_pi() );
  for ( auto i = 0u; i < bits; ++i )
    ys.push_back( b.create_pi() );

  auto carry = b.constant( false );
  for ( auto i = 0u; i < bits; ++i )
  {
    const auto t = b.create_xor( xs[i], ys[i] );
    b.create_po( b.create_xor( t, carry ) );
    carry = b.create_maj( xs[i], ys[i], carry );
  }
  b.create_po( carry );
  return b.build();
}

aig array_multiplier( uint32_t bits )
{
  aig_builder b( true );
  std::vector<signal> xs, ys;
  for ( auto i = 0u; i < bits; ++i )
    xs.push_back( b.create_pi() );
  for ( auto i = 0u; i < bits; ++i )
    ys.push_back( b.create_pi() );

  std::vector<signal> acc( 2u * bits, b.constant( false ) );
  for ( auto j = 0u; j < bits; ++j )
  {
    auto carry = b.constant( false );
    for ( auto i = 0u; i < bits; ++i )
    {
      const auto pp = b.create_and( xs[i], ys[j] );
      auto& s = acc[i + j];
      const auto t = b.create_xor( s, pp );
      const auto sum = b.create_xor( t, carry );
      carry = b.create_maj( s, pp, carry );
      s = sum;
    }
    acc[j + bits] = carry;
  }
  for ( auto const& s : acc )
    b.create_po( s );
  return b.build();
}

} // namespace pigmap
