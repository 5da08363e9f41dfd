#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>

namespace oracle
{

using namespace pigmap;

namespace
{

constexpr double inf = std::numeric_limits<double>::infinity();

bool eval_rec( aig const& g, std::vector<bool> const& inputs, node_id n, std::vector<int8_t>& memo )
{
  if ( memo[n] >= 0 )
    return memo[n] == 1;
  bool v = false;
  if ( n == 0u )
    v = false;
  else if ( g.is_pi( n ) )
    v = inputs[n - 1u];
  else
  {
    v = true;
    for ( auto const& f : g.fanins( n ) )
      v = v && ( eval_rec( g, inputs, f.node(), memo ) != f.complemented() );
  }
  memo[n] = v ? 1 : 0;
  return v;
}

std::vector<bool> eval_netlist( netlist const& nl, tech_library const& lib, std::vector<bool> const& inputs )
{
  std::vector<int> driver( nl.net_names.size(), -1 );
  for ( auto k = 0u; k < nl.instances.size(); ++k )
    driver[nl.instances[k].output] = static_cast<int>( k );
  std::vector<int8_t> memo( nl.net_names.size(), -1 );
  for ( auto i = 0u; i < nl.pi_nets.size(); ++i )
    memo[nl.pi_nets[i]] = inputs[i] ? 1 : 0;
  for ( auto const& [net, value] : nl.constants )
    memo[net] = value ? 1 : 0;

  std::function<bool( uint32_t )> value_of = [&]( uint32_t net ) -> bool {
    if ( memo[net] >= 0 )
      return memo[net] == 1;
    if ( driver[net] < 0 )
      throw std::logic_error( "undriven net " + nl.net_names[net] );
    auto const& inst = nl.instances[driver[net]];
    uint32_t minterm = 0u;
    for ( auto i = 0u; i < inst.inputs.size(); ++i )
      if ( value_of( inst.inputs[i] ) )
        minterm |= 1u << i;
    const bool v = lib[inst.gate].function.get_bit( minterm );
    memo[net] = v ? 1 : 0;
    return v;
  };

  std::vector<bool> res;
  for ( auto const net : nl.po_nets )
    res.push_back( value_of( net ) );
  return res;
}

std::vector<node_id> transitive_fanin( aig const& g, node_id root )
{
  std::vector<bool> seen( g.num_nodes(), false );
  std::vector<node_id> stack{ root };
  std::vector<node_id> res;
  while ( !stack.empty() )
  {
    const auto n = stack.back();
    stack.pop_back();
    if ( seen[n] )
      continue;
    seen[n] = true;
    if ( n != root )
      res.push_back( n );
    if ( g.is_and( n ) )
      for ( auto const& f : g.fanins( n ) )
        stack.push_back( f.node() );
  }
  std::sort( res.begin(), res.end() );
  return res;
}

} // namespace

std::vector<bool> eval_outputs( aig const& g, std::vector<bool> const& inputs )
{
  std::vector<int8_t> memo( g.num_nodes(), -1 );
  std::vector<bool> res;
  for ( auto const& o : g.outputs() )
    res.push_back( eval_rec( g, inputs, o.node(), memo ) != o.complemented() );
  return res;
}

uint64_t count_mismatches( aig const& g, netlist const& nl, tech_library const& lib, uint64_t seed, uint32_t random_vectors )
{
  const auto n = g.num_pis();
  uint64_t mismatches = 0u;
  auto check = [&]( std::vector<bool> const& in ) {
    const auto a = eval_outputs( g, in );
    const auto b = eval_netlist( nl, lib, in );
    for ( auto j = 0u; j < a.size(); ++j )
      mismatches += a[j] != b[j] ? 1u : 0u;
  };

  std::vector<bool> in( n );
  if ( n <= 12u )
  {
    for ( uint32_t m = 0u; m < ( 1u << n ); ++m )
    {
      for ( auto i = 0u; i < n; ++i )
        in[i] = ( m >> i ) & 1u;
      check( in );
    }
    return mismatches;
  }

  std::mt19937_64 rng( seed );
  for ( auto v = 0u; v < random_vectors; ++v )
  {
    for ( auto i = 0u; i < n; ++i )
      in[i] = rng() & 1u;
    check( in );
  }
  return mismatches;
}

bool is_cut( aig const& g, node_id root, std::vector<node_id> const& leaves )
{
  auto is_leaf = [&]( node_id n ) { return std::find( leaves.begin(), leaves.end(), n ) != leaves.end(); };
  std::vector<bool> seen( g.num_nodes(), false );
  std::vector<node_id> stack{ root };
  while ( !stack.empty() )
  {
    const auto n = stack.back();
    stack.pop_back();
    if ( seen[n] )
      continue;
    seen[n] = true;
    if ( is_leaf( n ) )
      continue;
    if ( !g.is_and( n ) )
      return false;
    for ( auto const& f : g.fanins( n ) )
      stack.push_back( f.node() );
  }
  return true;
}

std::set<std::vector<node_id>> all_minimal_cuts( aig const& g, node_id root, uint32_t k )
{
  std::set<std::vector<node_id>> res{ { root } };
  if ( !g.is_and( root ) )
    return res;

  const auto candidates = transitive_fanin( g, root );
  std::vector<std::vector<node_id>> cuts;
  std::vector<node_id> current;
  std::function<void( size_t )> grow = [&]( size_t from ) {
    if ( !current.empty() && is_cut( g, root, current ) )
      cuts.push_back( current );
    if ( current.size() == k )
      return;
    for ( auto i = from; i < candidates.size(); ++i )
    {
      current.push_back( candidates[i] );
      grow( i + 1u );
      current.pop_back();
    }
  };
  grow( 0u );

  for ( auto const& c : cuts )
  {
    bool minimal = true;
    for ( auto i = 0u; i < c.size() && minimal; ++i )
    {
      auto smaller = c;
      smaller.erase( smaller.begin() + i );
      if ( !smaller.empty() && is_cut( g, root, smaller ) )
        minimal = false;
    }
    if ( minimal )
      res.insert( c );
  }
  return res;
}

uint64_t cone_function( aig const& g, node_id root, std::vector<node_id> const& leaves )
{
  const auto n = static_cast<uint32_t>( leaves.size() );
  uint64_t bits = 0u;
  for ( uint32_t m = 0u; m < ( 1u << n ); ++m )
  {
    std::vector<int8_t> memo( g.num_nodes(), -1 );
    for ( auto i = 0u; i < n; ++i )
      memo[leaves[i]] = ( m >> i ) & 1u;
    std::vector<bool> no_inputs( g.num_pis(), false );
    if ( eval_rec( g, no_inputs, root, memo ) )
      bits |= uint64_t{1} << m;
  }
  return bits;
}

std::vector<delay_oracle::cell_use> const& delay_oracle::realizations( uint32_t s, uint64_t f )
{
  if ( auto it = cache_.find( { s, f } ); it != cache_.end() )
    return it->second;

  const uint64_t full = ( s == 6u ) ? ~uint64_t{0} : ( ( uint64_t{1} << ( 1u << s ) ) - 1u );
  std::vector<cell_use> uses;
  for ( auto gi = 0u; gi < lib_.gates().size(); ++gi )
  {
    auto const& gt = lib_[gi];
    const auto m = gt.num_inputs();
    if ( m == 0u || m > s )
      continue;

    /* injective pin-to-leaf maps and input negations */
    std::vector<uint32_t> assign( m );
    std::vector<bool> used( s, false );
    std::function<void( uint32_t )> place = [&]( uint32_t pin ) {
      if ( pin < m )
      {
        for ( auto l = 0u; l < s; ++l )
        {
          if ( used[l] )
            continue;
          used[l] = true;
          assign[pin] = l;
          place( pin + 1u );
          used[l] = false;
        }
        return;
      }
      for ( uint32_t neg = 0u; neg < ( 1u << m ); ++neg )
      {
        uint64_t h = 0u;
        for ( uint32_t x = 0u; x < ( 1u << s ); ++x )
        {
          uint32_t pins = 0u;
          for ( auto i = 0u; i < m; ++i )
            if ( ( ( x >> assign[i] ) & 1u ) != ( ( neg >> i ) & 1u ) )
              pins |= 1u << i;
          if ( gt.function.get_bit( pins ) )
            h |= uint64_t{1} << x;
        }
        for ( auto p = 0u; p < 2u; ++p )
          if ( h == ( p ? ( f ^ full ) : f ) )
            uses.push_back( { gi, assign, neg, p } );
      }
    };
    place( 0u );
  }
  return cache_.emplace( std::make_pair( s, f ), std::move( uses ) ).first->second;
}

double delay_oracle::min_delay( aig const& g, uint32_t k )
{
  const auto d_inv = lib_.inverter().max_delay();
  std::vector<std::array<double, 2>> best( g.num_nodes(), { inf, inf } );
  best[0] = { 0.0, 0.0 };
  for ( auto i = 0u; i < g.num_pis(); ++i )
    best[g.pi_node( i )] = { 0.0, d_inv };

  for ( node_id n = g.first_and(); n < g.num_nodes(); ++n )
  {
    std::array<double, 2> direct{ inf, inf };
    for ( auto const& leaves : all_minimal_cuts( g, n, k ) )
    {
      if ( leaves.size() == 1u && leaves[0] == n )
        continue;
      const auto s = static_cast<uint32_t>( leaves.size() );
      const auto f = cone_function( g, n, leaves );
      const uint64_t full = ( s == 6u ) ? ~uint64_t{0} : ( ( uint64_t{1} << ( 1u << s ) ) - 1u );
      if ( f == 0u || f == full )
      {
        direct = { 0.0, 0.0 };
        continue;
      }
      for ( auto const& u : realizations( s, f ) )
      {
        double arrival = 0.0;
        for ( auto i = 0u; i < u.leaf_of_pin.size(); ++i )
          arrival = std::max( arrival, best[leaves[u.leaf_of_pin[i]]][( u.input_neg >> i ) & 1u] + lib_[u.gate].max_delay() );
        direct[u.phase] = std::min( direct[u.phase], arrival );
      }
    }
    for ( auto p = 0u; p < 2u; ++p )
      best[n][p] = std::min( direct[p], direct[1u - p] + d_inv );
  }

  double worst = 0.0;
  for ( auto const& o : g.outputs() )
    worst = std::max( worst, best[o.node()][o.complemented() ? 1 : 0] );
  return worst;
}

cover_metrics recompute( aig const& g, cut_set const& cuts, tech_library const& lib, placement const& pl, mapper const& m )
{
  using key = std::pair<node_id, uint32_t>;

  auto inputs_of = [&]( node_id n, uint32_t p ) {
    std::vector<key> res;
    auto const& ch = m.state( n, p ).choice;
    if ( ch.kind == choice_kind::inverter )
      res.push_back( { n, 1u - p } );
    else if ( ch.kind == choice_kind::gate )
    {
      auto const& cu = cuts.cuts( n )[ch.cut];
      for ( auto i = 0u; i < lib[ch.m.gate].num_inputs(); ++i )
      {
        const auto leaf = cu.leaves[ch.m.leaf_of_pin[i]];
        if ( leaf != 0u )
          res.push_back( { leaf, ch.m.input_negated( i ) ? 1u : 0u } );
      }
    }
    else if ( ch.kind == choice_kind::none )
      throw std::logic_error( "cover reaches an unmapped phase" );
    return res;
  };

  std::map<key, point> pos_memo;
  std::function<point( node_id, uint32_t )> position = [&]( node_id n, uint32_t p ) -> point {
    if ( auto it = pos_memo.find( { n, p } ); it != pos_memo.end() )
      return it->second;
    auto const& ch = m.state( n, p ).choice;
    point r;
    if ( g.is_pi( n ) || n == 0u )
      r = pl.positions[n];
    else if ( ch.kind == choice_kind::inverter )
      r = position( n, 1u - p );
    else
    {
      auto const& pins = cuts.cuts( n )[ch.cut].pins;
      for ( auto const q : pins )
      {
        r.x += pl.positions[q].x / static_cast<double>( pins.size() );
        r.y += pl.positions[q].y / static_cast<double>( pins.size() );
      }
    }
    pos_memo[{ n, p }] = r;
    return r;
  };

  /* references */
  std::map<key, uint32_t> refs;
  std::vector<key> stack;
  for ( auto const& o : g.outputs() )
    if ( o.node() != 0u )
    {
      const key k{ o.node(), o.complemented() ? 1u : 0u };
      if ( refs[k]++ == 0u )
        stack.push_back( k );
    }
  while ( !stack.empty() )
  {
    const auto [n, p] = stack.back();
    stack.pop_back();
    for ( auto const& in : inputs_of( n, p ) )
      if ( refs[in]++ == 0u )
        stack.push_back( in );
  }

  auto is_tie = [&]( key const& k ) { return m.state( k.first, k.second ).choice.kind == choice_kind::tie; };

  std::map<key, std::array<double, 3>> memo;
  /* arrival, longest wire path, fanout-discounted wire */
  std::function<std::array<double, 3>( key const& )> values = [&]( key const& k ) -> std::array<double, 3> {
    if ( auto it = memo.find( k ); it != memo.end() )
      return it->second;
    auto const& ch = m.state( k.first, k.second ).choice;
    std::array<double, 3> r{ 0.0, 0.0, 0.0 };
    const auto here = position( k.first, k.second );
    for ( auto const& in : inputs_of( k.first, k.second ) )
    {
      const auto d = ch.kind == choice_kind::inverter ? lib.inverter().max_delay() : lib[ch.m.gate].max_delay();
      if ( is_tie( in ) )
      {
        r[0] = std::max( r[0], d );
        continue;
      }
      const auto v = values( in );
      const auto len = manhattan( here, position( in.first, in.second ) );
      r[0] = std::max( r[0], v[0] + d );
      r[1] = std::max( r[1], v[1] + len );
      r[2] += len + v[2] / std::max( 1.0, static_cast<double>( refs[in] ) );
    }
    if ( ch.kind == choice_kind::gate && inputs_of( k.first, k.second ).empty() )
      r[0] = lib[ch.m.gate].max_delay();
    memo[k] = r;
    return r;
  };

  cover_metrics res;
  for ( auto const& o : g.outputs() )
  {
    if ( o.node() == 0u )
      continue;
    const key k{ o.node(), o.complemented() ? 1u : 0u };
    const auto v = values( k );
    res.delay = std::max( res.delay, v[0] );
    res.critical_wl = std::max( res.critical_wl, v[1] );
    res.total_wl_eq4 += v[2] / static_cast<double>( refs[k] );
  }
  for ( auto const& [k, count] : refs )
  {
    auto const& ch = m.state( k.first, k.second ).choice;
    if ( ch.kind == choice_kind::gate )
      res.area += lib[ch.m.gate].area;
    else if ( ch.kind == choice_kind::inverter )
      res.area += lib.inverter().area;
    const auto here = position( k.first, k.second );
    for ( auto const& in : inputs_of( k.first, k.second ) )
      if ( !is_tie( in ) )
        res.total_wl += manhattan( here, position( in.first, in.second ) );
  }
  return res;
}

} // namespace oracle
