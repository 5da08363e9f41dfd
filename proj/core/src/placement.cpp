#include "pigmap/placement.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace pigmap
{

namespace
{

point on_path( double t, double side, bool inputs )
{
  if ( inputs )
    return t <= side ? point{ 0.0, side - t } : point{ t - side, 0.0 };
  return t <= side ? point{ t, side } : point{ side, side - ( t - side ) };
}

double clamp( double v, double side )
{
  return std::clamp( v, 0.0, side );
}

/* neighbour references: node ids, or num_nodes + j for PO terminal j */
struct adjacency
{
  std::vector<uint32_t> offsets;
  std::vector<uint32_t> refs;
};

adjacency build_adjacency( aig const& g )
{
  const auto first = g.first_and();
  std::vector<std::vector<uint32_t>> lists( g.num_ands() );
  for ( node_id n = first; n < g.num_nodes(); ++n )
  {
    for ( auto const& f : g.fanins( n ) )
    {
      if ( g.is_constant( f.node() ) )
        continue;
      lists[n - first].push_back( f.node() );
      if ( g.is_and( f.node() ) )
        lists[f.node() - first].push_back( n );
    }
  }
  for ( auto j = 0u; j < g.num_pos(); ++j )
  {
    const auto n = g.outputs()[j].node();
    if ( g.is_and( n ) )
      lists[n - first].push_back( g.num_nodes() + j );
  }

  adjacency adj;
  adj.offsets.push_back( 0u );
  for ( auto const& l : lists )
  {
    adj.refs.insert( adj.refs.end(), l.begin(), l.end() );
    adj.offsets.push_back( static_cast<uint32_t>( adj.refs.size() ) );
  }
  return adj;
}

point position_of( uint32_t ref, aig const& g, region const& r, std::span<const point> positions )
{
  return ref < g.num_nodes() ? positions[ref] : r.po_positions[ref - g.num_nodes()];
}

} // namespace

region floorplan( aig const& g, place_params const& ps )
{
  region r;
  r.side = std::max( 1.0, std::ceil( std::sqrt( static_cast<double>( g.num_ands() ) ) * ps.spacing ) );
  const auto length = 2.0 * r.side;
  for ( auto i = 0u; i < g.num_pis(); ++i )
    r.pi_positions.push_back( on_path( ( i + 0.5 ) / g.num_pis() * length, r.side, true ) );
  for ( auto j = 0u; j < g.num_pos(); ++j )
    r.po_positions.push_back( on_path( ( j + 0.5 ) / g.num_pos() * length, r.side, false ) );
  return r;
}

std::vector<point> initial_positions( aig const& g, region const& r, place_params const& ps )
{
  std::mt19937_64 rng( ps.seed );
  std::normal_distribution<double> jitter( 0.0, ps.jitter * r.side );
  const auto center = r.side / 2.0;
  std::vector<point> res( g.num_ands() );
  for ( auto& p : res )
  {
    p.x = clamp( center + jitter( rng ), r.side );
    p.y = clamp( center + jitter( rng ), r.side );
  }
  return res;
}

double quadratic_objective( aig const& g, region const& r, std::span<const point> positions )
{
  auto sq = []( point const& a, point const& b ) {
    const auto dx = a.x - b.x;
    const auto dy = a.y - b.y;
    return dx * dx + dy * dy;
  };
  double total = 0.0;
  for ( node_id n = g.first_and(); n < g.num_nodes(); ++n )
    for ( auto const& f : g.fanins( n ) )
      if ( !g.is_constant( f.node() ) )
        total += sq( positions[n], positions[f.node()] );
  for ( auto j = 0u; j < g.num_pos(); ++j )
  {
    const auto n = g.outputs()[j].node();
    if ( !g.is_constant( n ) )
      total += sq( positions[n], r.po_positions[j] );
  }
  return total;
}

placement place( aig const& g, region const& r, place_params const& ps )
{
  return place_from( g, r, initial_positions( g, r, ps ), ps );
}

placement place_from( aig const& g, region const& r, std::vector<point> const& initial, place_params const& ps )
{
  placement pl;
  pl.core = r;
  pl.positions.assign( g.num_nodes(), point{} );
  for ( auto i = 0u; i < g.num_pis(); ++i )
    pl.positions[g.pi_node( i )] = r.pi_positions[i];
  for ( auto i = 0u; i < g.num_ands(); ++i )
    pl.positions[g.first_and() + i] = { clamp( initial[i].x, r.side ), clamp( initial[i].y, r.side ) };

  const auto adj = build_adjacency( g );
  const auto tolerance = ps.tolerance * r.side;
  pl.objective_trace.push_back( quadratic_objective( g, r, pl.positions ) );

  if ( g.num_ands() == 0u )
  {
    pl.converged = true;
    return pl;
  }

  while ( pl.iterations < ps.max_iterations )
  {
    double max_move = 0.0;
    for ( auto i = 0u; i < g.num_ands(); ++i )
    {
      const auto begin = adj.offsets[i];
      const auto end = adj.offsets[i + 1u];
      if ( begin == end )
        continue;
      double sx = 0.0, sy = 0.0;
      for ( auto k = begin; k < end; ++k )
      {
        const auto p = position_of( adj.refs[k], g, r, pl.positions );
        sx += p.x;
        sy += p.y;
      }
      const auto count = static_cast<double>( end - begin );
      const point next{ clamp( sx / count, r.side ), clamp( sy / count, r.side ) };
      auto& cur = pl.positions[g.first_and() + i];
      max_move = std::max( max_move, std::max( std::abs( next.x - cur.x ), std::abs( next.y - cur.y ) ) );
      cur = next;
    }
    ++pl.iterations;
    pl.objective_trace.push_back( quadratic_objective( g, r, pl.positions ) );
    if ( max_move < tolerance )
    {
      pl.converged = true;
      break;
    }
  }
  return pl;
}

double net_hpwl( std::span<const point> pins )
{
  if ( pins.size() < 2u )
    return 0.0;
  auto min_x = pins[0].x, max_x = pins[0].x, min_y = pins[0].y, max_y = pins[0].y;
  for ( auto const& p : pins )
  {
    min_x = std::min( min_x, p.x );
    max_x = std::max( max_x, p.x );
    min_y = std::min( min_y, p.y );
    max_y = std::max( max_y, p.y );
  }
  return ( max_x - min_x ) + ( max_y - min_y );
}

double hpwl( aig const& g, placement const& pl )
{
  std::vector<std::vector<point>> nets( g.num_nodes() );
  for ( node_id n = 1u; n < g.num_nodes(); ++n )
    nets[n].push_back( pl.positions.at( n ) );
  for ( node_id n = g.first_and(); n < g.num_nodes(); ++n )
    for ( auto const& f : g.fanins( n ) )
      if ( !g.is_constant( f.node() ) )
        nets[f.node()].push_back( pl.positions.at( n ) );
  for ( auto j = 0u; j < g.num_pos(); ++j )
  {
    const auto n = g.outputs()[j].node();
    if ( !g.is_constant( n ) )
      nets[n].push_back( pl.core.po_positions.at( j ) );
  }
  double total = 0.0;
  for ( auto const& net : nets )
    total += net_hpwl( net );
  return total;
}

std::string placement_to_svg( aig const& g, placement const& pl )
{
  const double scale = 600.0 / pl.core.side;
  const double margin = 20.0;
  auto sx = [&]( double x ) { return margin + x * scale; };
  auto sy = [&]( double y ) { return margin + ( pl.core.side - y ) * scale; };
  const double size = 2.0 * margin + pl.core.side * scale;

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\">\n";
  os << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << pl.core.side * scale << "\" height=\"" << pl.core.side * scale
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  os << "<g stroke=\"#999\" stroke-width=\"0.5\">\n";
  auto line = [&]( point const& a, point const& b ) {
    os << "<line x1=\"" << sx( a.x ) << "\" y1=\"" << sy( a.y ) << "\" x2=\"" << sx( b.x ) << "\" y2=\"" << sy( b.y ) << "\"/>\n";
  };
  for ( node_id n = g.first_and(); n < g.num_nodes(); ++n )
    for ( auto const& f : g.fanins( n ) )
      if ( !g.is_constant( f.node() ) )
        line( pl.positions[f.node()], pl.positions[n] );
  for ( auto j = 0u; j < g.num_pos(); ++j )
    if ( !g.is_constant( g.outputs()[j].node() ) )
      line( pl.positions[g.outputs()[j].node()], pl.core.po_positions[j] );
  os << "</g>\n";
  for ( node_id n = g.first_and(); n < g.num_nodes(); ++n )
    os << "<circle cx=\"" << sx( pl.positions[n].x ) << "\" cy=\"" << sy( pl.positions[n].y ) << "\" r=\"3\" fill=\"steelblue\"><title>" << n
       << "</title></circle>\n";
  for ( auto i = 0u; i < g.num_pis(); ++i )
    os << "<rect x=\"" << sx( pl.core.pi_positions[i].x ) - 4 << "\" y=\"" << sy( pl.core.pi_positions[i].y ) - 4
       << "\" width=\"8\" height=\"8\" fill=\"seagreen\"><title>pi" << i << "</title></rect>\n";
  for ( auto j = 0u; j < g.num_pos(); ++j )
    os << "<rect x=\"" << sx( pl.core.po_positions[j].x ) - 4 << "\" y=\"" << sy( pl.core.po_positions[j].y ) - 4
       << "\" width=\"8\" height=\"8\" fill=\"firebrick\"><title>po" << j << "</title></rect>\n";
  os << "</svg>\n";
  return os.str();
}

} // namespace pigmap
