#include "pigmap/cuts.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace pigmap
{

size_t cut_set::total_cuts() const
{
  size_t total = 0u;
  for ( auto const& cs : cuts_ )
    total += cs.size();
  return total;
}

namespace
{

struct leaf_set
{
  std::array<node_id, truth_table::max_vars> leaves{};
  uint32_t size{0};
  uint64_t signature{0};
  uint64_t level_sum{0};

  std::span<const node_id> view() const { return { leaves.data(), size }; }
};

/* sorted merge, fails when the union exceeds k */
bool merge( leaf_set const& a, leaf_set const& b, uint32_t k, leaf_set& out )
{
  uint32_t i = 0u, j = 0u, n = 0u;
  while ( i < a.size || j < b.size )
  {
    node_id next;
    if ( j == b.size || ( i < a.size && a.leaves[i] < b.leaves[j] ) )
      next = a.leaves[i++];
    else if ( i == a.size || b.leaves[j] < a.leaves[i] )
      next = b.leaves[j++];
    else
    {
      next = a.leaves[i];
      ++i;
      ++j;
    }
    if ( n == k )
      return false;
    out.leaves[n++] = next;
  }
  out.size = n;
  out.signature = a.signature | b.signature;
  return true;
}

bool is_subset( leaf_set const& small, leaf_set const& large )
{
  if ( small.size > large.size || ( small.signature & ~large.signature ) != 0u )
    return false;
  uint32_t j = 0u;
  for ( uint32_t i = 0u; i < small.size; ++i )
  {
    while ( j < large.size && large.leaves[j] < small.leaves[i] )
      ++j;
    if ( j == large.size || large.leaves[j] != small.leaves[i] )
      return false;
  }
  return true;
}

void pin_search( aig const& g, node_id n, std::span<const node_id> leaves, uint32_t level, uint32_t limit, std::vector<node_id>& pins )
{
  if ( level > limit )
    return;
  ++level;
  for ( auto const& f : g.fanins( n ) )
  {
    const auto child = f.node();
    if ( std::find( leaves.begin(), leaves.end(), child ) != leaves.end() )
    {
      pins.push_back( n );
      continue;
    }
    if ( !g.is_and( child ) )
      throw std::invalid_argument( "leaves do not form a cut of node " + std::to_string( n ) );
    /* the search depth is exhausted: the frontier node stands in for the rest of the cone */
    if ( level + 1u > limit )
    {
      pins.push_back( child );
      continue;
    }
    pin_search( g, child, leaves, level, limit, pins );
  }
}

} // namespace

truth_table cut_truth_table( aig const& g, std::span<const node_id> leaves, node_id root )
{
  if ( leaves.size() > truth_table::max_vars )
    throw std::invalid_argument( "cut with " + std::to_string( leaves.size() ) + " leaves is wider than 6" );

  const auto num_vars = static_cast<uint32_t>( leaves.size() );
  for ( auto i = 0u; i < leaves.size(); ++i )
    if ( leaves[i] == root )
      return truth_table::nth_var( num_vars, i );

  /* collect the cone between leaves and root */
  std::vector<node_id> cone;
  std::vector<node_id> stack{ root };
  std::vector<node_id> visited;
  while ( !stack.empty() )
  {
    const auto n = stack.back();
    stack.pop_back();
    if ( std::find( visited.begin(), visited.end(), n ) != visited.end() )
      continue;
    visited.push_back( n );
    if ( std::find( leaves.begin(), leaves.end(), n ) != leaves.end() )
      continue;
    if ( !g.is_and( n ) )
      throw std::invalid_argument( "leaves do not form a cut of node " + std::to_string( root ) );
    cone.push_back( n );
    for ( auto const& f : g.fanins( n ) )
      stack.push_back( f.node() );
  }
  std::sort( cone.begin(), cone.end() );

  const auto mask = truth_table::mask_for( num_vars );
  auto value_of = [&]( node_id n, std::vector<uint64_t> const& values ) -> uint64_t {
    for ( auto i = 0u; i < leaves.size(); ++i )
      if ( leaves[i] == n )
        return truth_table::nth_var( num_vars, i ).bits;
    const auto it = std::lower_bound( cone.begin(), cone.end(), n );
    return values[static_cast<size_t>( it - cone.begin() )];
  };

  std::vector<uint64_t> values( cone.size(), 0u );
  for ( auto i = 0u; i < cone.size(); ++i )
  {
    auto const& fs = g.fanins( cone[i] );
    auto a = value_of( fs[0].node(), values );
    auto b = value_of( fs[1].node(), values );
    if ( fs[0].complemented() )
      a = ~a;
    if ( fs[1].complemented() )
      b = ~b;
    values[i] = a & b & mask;
  }
  return { value_of( root, values ), num_vars };
}

std::vector<node_id> search_pins( aig const& g, node_id root, std::span<const node_id> leaves, uint32_t depth_limit )
{
  std::vector<node_id> pins{ root };
  if ( g.is_and( root ) && !( leaves.size() == 1u && leaves[0] == root ) )
    pin_search( g, root, leaves, 0u, depth_limit, pins );
  std::sort( pins.begin(), pins.end() );
  pins.erase( std::unique( pins.begin(), pins.end() ), pins.end() );
  return pins;
}

cut_set enumerate_cuts( aig const& g, cut_params const& ps )
{
  if ( ps.k < 2u || ps.k > truth_table::max_vars )
    throw std::invalid_argument( "cut size k must be between 2 and 6, got " + std::to_string( ps.k ) );
  if ( ps.cut_limit < 1u )
    throw std::invalid_argument( "cut limit must be at least 1" );

  const auto levels = stats( g ).levels;
  std::vector<std::vector<leaf_set>> sets( g.num_nodes() );

  auto trivial = [&]( node_id n ) {
    leaf_set s;
    s.leaves[0] = n;
    s.size = 1u;
    s.signature = uint64_t{1} << ( n % 64u );
    s.level_sum = levels[n];
    return s;
  };

  for ( node_id n = 0u; n < g.num_nodes(); ++n )
  {
    if ( !g.is_and( n ) )
    {
      sets[n].push_back( trivial( n ) );
      continue;
    }

    auto const& fs = g.fanins( n );
    auto const& c0 = sets[fs[0].node()];
    auto const& c1 = sets[fs[1].node()];

    std::vector<leaf_set> found;
    leaf_set merged;
    for ( auto const& a : c0 )
    {
      for ( auto const& b : c1 )
      {
        if ( !merge( a, b, ps.k, merged ) )
          continue;

        bool dominated = false;
        for ( auto const& existing : found )
        {
          if ( is_subset( existing, merged ) )
          {
            dominated = true;
            break;
          }
        }
        if ( dominated )
          continue;
        std::erase_if( found, [&]( leaf_set const& existing ) { return is_subset( merged, existing ); } );

        merged.level_sum = 0u;
        for ( auto i = 0u; i < merged.size; ++i )
          merged.level_sum += levels[merged.leaves[i]];
        found.push_back( merged );
      }
    }

    std::sort( found.begin(), found.end(), []( leaf_set const& a, leaf_set const& b ) {
      if ( a.size != b.size )
        return a.size < b.size;
      if ( a.level_sum != b.level_sum )
        return a.level_sum < b.level_sum;
      return std::lexicographical_compare( a.leaves.begin(), a.leaves.begin() + a.size, b.leaves.begin(), b.leaves.begin() + b.size );
    } );
    if ( found.size() > ps.cut_limit )
      found.resize( ps.cut_limit );

    auto& target = sets[n];
    target.reserve( found.size() + 1u );
    target.push_back( trivial( n ) );
    target.insert( target.end(), found.begin(), found.end() );
  }

  std::vector<std::vector<cut>> cuts( g.num_nodes() );
  for ( node_id n = 0u; n < g.num_nodes(); ++n )
  {
    cuts[n].reserve( sets[n].size() );
    for ( auto const& s : sets[n] )
    {
      cut c;
      c.leaves.assign( s.leaves.begin(), s.leaves.begin() + s.size );
      c.root = n;
      c.function = cut_truth_table( g, c.leaves, n );
      c.pins = search_pins( g, n, c.leaves, ps.pin_depth );
      cuts[n].push_back( std::move( c ) );
    }
  }
  return cut_set( std::move( cuts ) );
}

} // namespace pigmap
