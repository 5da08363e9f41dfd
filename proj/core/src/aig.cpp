#include "pigmap/aig.hpp"

#include <algorithm>
#include <string>

namespace pigmap
{

aig::aig( uint32_t num_pis, std::vector<std::array<signal, 2>> ands, std::vector<signal> outputs )
    : num_pis_( num_pis ), ands_( std::move( ands ) ), outputs_( std::move( outputs ) )
{
  for ( auto i = 0u; i < ands_.size(); ++i )
  {
    const node_id n = first_and() + i;
    for ( auto const& f : ands_[i] )
    {
      if ( f.node() >= n )
        throw std::invalid_argument( "AND node " + std::to_string( n ) + " has fanin " + std::to_string( f.node() ) + " that is not smaller than itself" );
    }
  }
  for ( auto const& o : outputs_ )
  {
    if ( o.node() >= num_nodes() )
      throw std::invalid_argument( "output refers to missing node " + std::to_string( o.node() ) );
  }
}

std::vector<uint32_t> aig::fanout_counts() const
{
  std::vector<uint32_t> counts( num_nodes(), 0u );
  for ( auto const& fs : ands_ )
  {
    ++counts[fs[0].node()];
    ++counts[fs[1].node()];
  }
  for ( auto const& o : outputs_ )
    ++counts[o.node()];
  return counts;
}

signal aig_builder::create_pi()
{
  if ( !ands_.empty() )
    throw std::logic_error( "PIs must be created before AND nodes" );
  ++num_pis_;
  return signal::make( num_pis_ );
}

signal aig_builder::create_and( signal a, signal b )
{
  if ( a.node() >= num_nodes() || b.node() >= num_nodes() )
    throw std::invalid_argument( "fanin refers to a node that does not exist yet" );

  if ( strash_ )
  {
    if ( a.literal > b.literal )
      std::swap( a, b );
    if ( a.literal == 0u )
      return constant( false );
    if ( a.literal == 1u )
      return b;
    if ( a == b )
      return a;
    if ( a == !b )
      return constant( false );
    const auto key = ( uint64_t{ a.literal } << 32u ) | b.literal;
    if ( auto it = hash_.find( key ); it != hash_.end() )
      return signal::make( it->second );
    hash_.emplace( key, num_nodes() );
  }

  ands_.push_back( { a, b } );
  return signal::make( num_nodes() - 1u );
}

signal aig_builder::create_xor( signal a, signal b )
{
  return create_or( create_and( a, !b ), create_and( !a, b ) );
}

signal aig_builder::create_maj( signal a, signal b, signal c )
{
  return create_or( create_and( a, b ), create_and( c, create_or( a, b ) ) );
}

void aig_builder::create_po( signal s )
{
  if ( s.node() >= num_nodes() )
    throw std::invalid_argument( "output refers to a node that does not exist" );
  outputs_.push_back( s );
}

aig aig_builder::build() const
{
  return aig( num_pis_, ands_, outputs_ );
}

std::vector<node_id> topo_order( aig const& g )
{
  std::vector<node_id> order;
  order.reserve( g.num_nodes() - 1u );
  for ( node_id n = 1u; n < g.num_nodes(); ++n )
    order.push_back( n );
  return order;
}

aig_stats stats( aig const& g )
{
  aig_stats st;
  st.size = g.num_ands();
  st.levels.assign( g.num_nodes(), 0u );
  for ( node_id n = 1u; n < g.num_nodes(); ++n )
  {
    if ( g.is_pi( n ) )
    {
      st.levels[n] = 1u;
      continue;
    }
    auto const& fs = g.fanins( n );
    st.levels[n] = 1u + std::max( st.levels[fs[0].node()], st.levels[fs[1].node()] );
  }
  for ( auto const& o : g.outputs() )
    st.depth = std::max( st.depth, st.levels[o.node()] );
  return st;
}

std::vector<uint64_t> simulate_nodes( aig const& g, std::span<const uint64_t> pi_words )
{
  if ( pi_words.size() != g.num_pis() )
    throw std::invalid_argument( "expected " + std::to_string( g.num_pis() ) + " input words, got " + std::to_string( pi_words.size() ) );

  std::vector<uint64_t> values( g.num_nodes(), 0u );
  std::copy( pi_words.begin(), pi_words.end(), values.begin() + 1 );
  for ( node_id n = g.first_and(); n < g.num_nodes(); ++n )
  {
    auto const& fs = g.fanins( n );
    const auto a = values[fs[0].node()] ^ ( fs[0].complemented() ? ~uint64_t{0} : 0u );
    const auto b = values[fs[1].node()] ^ ( fs[1].complemented() ? ~uint64_t{0} : 0u );
    values[n] = a & b;
  }
  return values;
}

std::vector<uint64_t> simulate_words( aig const& g, std::span<const uint64_t> pi_words )
{
  const auto values = simulate_nodes( g, pi_words );
  std::vector<uint64_t> res;
  res.reserve( g.num_pos() );
  for ( auto const& o : g.outputs() )
    res.push_back( values[o.node()] ^ ( o.complemented() ? ~uint64_t{0} : 0u ) );
  return res;
}

std::vector<std::vector<bool>> simulate( aig const& g, std::vector<std::vector<bool>> const& input_vectors )
{
  std::vector<std::vector<bool>> res;
  res.reserve( input_vectors.size() );
  for ( auto base = 0u; base < input_vectors.size(); base += 64u )
  {
    const auto count = std::min<size_t>( 64u, input_vectors.size() - base );
    std::vector<uint64_t> words( g.num_pis(), 0u );
    for ( auto j = 0u; j < count; ++j )
    {
      auto const& vec = input_vectors[base + j];
      if ( vec.size() != g.num_pis() )
        throw std::invalid_argument( "input vector has " + std::to_string( vec.size() ) + " bits, expected " + std::to_string( g.num_pis() ) );
      for ( auto i = 0u; i < g.num_pis(); ++i )
        if ( vec[i] )
          words[i] |= uint64_t{1} << j;
    }
    const auto out = simulate_words( g, words );
    for ( auto j = 0u; j < count; ++j )
    {
      std::vector<bool> v( g.num_pos() );
      for ( auto o = 0u; o < g.num_pos(); ++o )
        v[o] = ( out[o] >> j ) & 1u;
      res.push_back( std::move( v ) );
    }
  }
  return res;
}

std::vector<std::vector<uint64_t>> simulate_exhaustive( aig const& g )
{
  if ( g.num_pis() > 16u )
    throw std::invalid_argument( "exhaustive simulation is limited to 16 PIs" );

  const uint64_t num_minterms = uint64_t{1} << g.num_pis();
  const auto num_words = static_cast<size_t>( ( num_minterms + 63u ) / 64u );
  std::vector<std::vector<uint64_t>> res( g.num_pos(), std::vector<uint64_t>( num_words, 0u ) );

  std::vector<uint64_t> words( g.num_pis() );
  for ( size_t w = 0u; w < num_words; ++w )
  {
    for ( auto i = 0u; i < g.num_pis(); ++i )
    {
      uint64_t word = 0u;
      for ( auto j = 0u; j < 64u; ++j )
      {
        const uint64_t m = w * 64u + j;
        if ( ( m >> i ) & 1u )
          word |= uint64_t{1} << j;
      }
      words[i] = word;
    }
    auto out = simulate_words( g, words );
    const uint64_t valid = num_minterms - w * 64u >= 64u ? ~uint64_t{0} : ( ( uint64_t{1} << ( num_minterms - w * 64u ) ) - 1u );
    for ( auto o = 0u; o < g.num_pos(); ++o )
      res[o][w] = out[o] & valid;
  }
  return res;
}

} // namespace pigmap
