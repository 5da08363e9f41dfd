#include "pigmap/mapper.hpp"

#include <algorithm>
#include <cmath>

namespace pigmap
{

namespace
{

constexpr double infinity = std::numeric_limits<double>::infinity();
constexpr double relative_eps = 1e-9;

/* -1, 0, 1 with relative tolerance */
int compare( double a, double b )
{
  if ( std::isinf( a ) || std::isinf( b ) )
    return a < b ? -1 : ( a > b ? 1 : 0 );
  const auto tol = relative_eps * std::max( std::abs( a ), std::abs( b ) );
  if ( a < b - tol )
    return -1;
  if ( b < a - tol )
    return 1;
  return 0;
}

bool within( double value, double limit )
{
  return value <= limit + relative_eps * std::abs( limit ) + 1e-12;
}

} // namespace

std::string_view to_string( strategy s )
{
  switch ( s )
  {
  case strategy::delay_only:
    return "delay";
  case strategy::performance:
    return "performance";
  case strategy::power:
    return "power";
  }
  return "unknown";
}

std::optional<strategy> parse_strategy( std::string_view name )
{
  if ( name == "delay" )
    return strategy::delay_only;
  if ( name == "performance" )
    return strategy::performance;
  if ( name == "power" )
    return strategy::power;
  return std::nullopt;
}

mapper::mapper( aig const& g, cut_set const& cuts, tech_library const& lib, placement const& pl, mapper_params const& ps )
    : g_( g ), cuts_( cuts ), lib_( lib ), pl_( pl ), ps_( ps )
{
  if ( cuts.num_nodes() != g.num_nodes() )
    throw std::invalid_argument( "cut set does not belong to the graph" );
  if ( pl.positions.size() != g.num_nodes() )
    throw std::invalid_argument( "placement does not belong to the graph" );

  inv_delay_ = lib.inverter().max_delay();
  inv_area_ = lib.inverter().area;

  const auto n_nodes = g.num_nodes();
  cut_matches_.resize( n_nodes );
  cut_positions_.resize( n_nodes );
  cut_constant_.resize( n_nodes );
  for ( node_id n = 0u; n < n_nodes; ++n )
  {
    for ( auto const& c : cuts.cuts( n ) )
    {
      auto it = match_cache_.find( c.function );
      if ( it == match_cache_.end() )
        it = match_cache_.emplace( c.function, lib.match_cut( c.function ) ).first;
      cut_matches_[n].push_back( &it->second );

      point pos;
      for ( auto const pin : c.pins )
      {
        pos.x += pl.positions[pin].x;
        pos.y += pl.positions[pin].y;
      }
      pos.x /= static_cast<double>( c.pins.size() );
      pos.y /= static_cast<double>( c.pins.size() );
      cut_positions_[n].push_back( pos );

      int8_t constant = -1;
      if ( !c.is_trivial() )
      {
        if ( c.function.bits == 0u )
          constant = 0;
        else if ( c.function.bits == c.function.mask() )
          constant = 1;
      }
      cut_constant_[n].push_back( constant );
    }
  }

  states_.resize( n_nodes );
  refs_.assign( n_nodes, { 0u, 0u } );
  budgets_.resize( n_nodes );
  init_fixed_states();
}

void mapper::init_fixed_states()
{
  const auto fanouts = g_.fanout_counts();
  for ( node_id n = 0u; n < g_.num_nodes(); ++n )
  {
    for ( auto p = 0u; p < 2u; ++p )
      states_[n][p].est_fanouts = std::max( 1.0, static_cast<double>( fanouts[n] ) );
  }

  for ( auto p = 0u; p < 2u; ++p )
    states_[0][p].choice.kind = choice_kind::constant;

  for ( auto i = 0u; i < g_.num_pis(); ++i )
  {
    const auto n = g_.pi_node( i );
    auto& pos = states_[n][0];
    pos.choice.kind = choice_kind::pi;
    pos.position = pl_.positions[n];

    auto& neg = states_[n][1];
    neg.choice.kind = choice_kind::inverter;
    neg.arrival = inv_delay_;
    neg.area_flow = inv_area_;
    neg.position = pl_.positions[n];
  }
}

double mapper::pin_delay( phase_choice const& ch, uint32_t pin ) const
{
  if ( ch.kind == choice_kind::inverter )
    return inv_delay_;
  if ( ch.kind != choice_kind::gate )
    return 0.0;
  auto const& gt = lib_[ch.m.gate];
  return ps_.per_pin_delay ? gt.pin_delays[pin] : gt.max_delay();
}

mapper::candidate mapper::evaluate_gate( node_id n, uint32_t c, match const& m ) const
{
  auto const& cu = cuts_.cuts( n )[c];
  auto const& gt = lib_[m.gate];

  candidate r;
  r.choice = { choice_kind::gate, c, m };
  r.cut_size = cu.size();
  auto& v = r.values;
  v.position = cut_positions_[n][c];
  v.area_flow = gt.area;

  for ( auto i = 0u; i < gt.num_inputs(); ++i )
  {
    const auto leaf = cu.leaves[m.leaf_of_pin[i]];
    const auto d = pin_delay( r.choice, i );
    auto const& s = states_[leaf][m.input_negated( i ) ? 1 : 0];
    if ( leaf == 0u || s.choice.kind == choice_kind::tie )
    {
      v.arrival = std::max( v.arrival, d );
      continue;
    }
    const auto dist = manhattan( v.position, s.position );
    v.arrival = std::max( v.arrival, s.arrival + d );
    v.area_flow += s.area_flow / s.est_fanouts;
    v.mw = std::max( v.mw, dist + s.mw );
    v.tw += dist + s.tw / s.est_fanouts;
  }
  return r;
}

mapper::candidate mapper::evaluate_tie( node_id n, uint32_t c, bool value ) const
{
  candidate r;
  r.choice.kind = choice_kind::tie;
  r.choice.cut = c;
  r.choice.m.output_negated = value;
  r.cut_size = cuts_.cuts( n )[c].size();
  r.values.position = cut_positions_[n][c];
  return r;
}

mapper::candidate mapper::evaluate_inverter( node_id n, phase_state const& other, double other_est ) const
{
  candidate r;
  r.choice.kind = choice_kind::inverter;
  r.cut_size = cuts_.cuts( n ).size() > 1u ? cuts_.cuts( n )[other.choice.cut].size() : 1u;
  auto& v = r.values;
  v.position = other.position;
  v.arrival = other.arrival + inv_delay_;
  v.area_flow = inv_area_ + other.area_flow / other_est;
  v.mw = other.mw;
  v.tw = other.tw / other_est;
  return r;
}

void mapper::recompute_node( node_id n )
{
  if ( !g_.is_and( n ) )
    return;
  const uint32_t first = states_[n][0].choice.kind == choice_kind::inverter ? 1u : 0u;
  for ( auto p : { first, 1u - first } )
  {
    auto& s = states_[n][p];
    candidate c;
    switch ( s.choice.kind )
    {
    case choice_kind::gate:
      c = evaluate_gate( n, s.choice.cut, s.choice.m );
      break;
    case choice_kind::tie:
      c = evaluate_tie( n, s.choice.cut, s.choice.m.output_negated );
      break;
    case choice_kind::inverter:
      c = evaluate_inverter( n, states_[n][1u - p], states_[n][1u - p].est_fanouts );
      break;
    default:
      continue;
    }
    s.arrival = c.values.arrival;
    s.area_flow = c.values.area_flow;
    s.mw = c.values.mw;
    s.tw = c.values.tw;
    s.position = c.values.position;
  }
}

bool mapper::feasible( node_id n, uint32_t p, candidate const& c ) const
{
  auto const& s = states_[n][p];
  if ( c.values.arrival > s.required + required_tol_ )
    return false;
  if ( use_budgets_ )
  {
    for ( auto const& b : budgets_[n][p] )
    {
      const auto dist = b.colocated ? 0.0 : manhattan( b.position, c.values.position );
      if ( !within( dist + c.values.mw, b.limit ) )
        return false;
    }
  }
  return true;
}

bool mapper::better( candidate const& a, candidate const& b, objective obj ) const
{
  auto const& x = a.values;
  auto const& y = b.values;
  auto score = [this]( phase_state const& v ) {
    return ps_.wl_weight * v.arrival / score_time_ + ( 1.0 - ps_.wl_weight ) * v.mw / score_wl_;
  };

  std::array<int, 2> keys{};
  switch ( obj )
  {
  case objective::delay:
    keys = { compare( x.arrival, y.arrival ), compare( x.area_flow, y.area_flow ) };
    break;
  case objective::area:
    keys = { compare( x.area_flow, y.area_flow ), compare( x.arrival, y.arrival ) };
    break;
  case objective::performance:
    keys = { compare( score( x ), score( y ) ), compare( x.area_flow, y.area_flow ) };
    break;
  case objective::power:
    keys = { compare( x.tw, y.tw ), compare( x.area_flow, y.area_flow ) };
    break;
  }
  for ( auto const k : keys )
    if ( k != 0 )
      return k < 0;
  return a.cut_size < b.cut_size;
}

void mapper::map_node( node_id n, objective obj, bool constrained )
{
  std::array<std::optional<candidate>, 2> best;
  auto consider = [&]( uint32_t p, candidate c ) {
    if ( constrained && !feasible( n, p, c ) )
      return;
    if ( !best[p] || better( c, *best[p], obj ) )
      best[p] = std::move( c );
  };

  const auto num_cuts = static_cast<uint32_t>( cuts_.cuts( n ).size() );
  for ( auto c = 1u; c < num_cuts; ++c )
  {
    if ( const auto v = cut_constant_[n][c]; v >= 0 )
    {
      consider( 0u, evaluate_tie( n, c, v == 1 ) );
      consider( 1u, evaluate_tie( n, c, v == 0 ) );
      continue;
    }
    for ( auto const& m : *cut_matches_[n][c] )
      consider( m.output_negated ? 1u : 0u, evaluate_gate( n, c, m ) );
  }

  if ( !best[0] && !best[1] && !constrained )
    throw mapping_error( n );

  auto with_inverter = [&]( uint32_t p, std::optional<candidate> const& direct, std::optional<candidate> const& other ) {
    std::optional<candidate> chosen = direct;
    if ( other && other->choice.kind != choice_kind::inverter )
    {
      auto inv = evaluate_inverter( n, other->values, states_[n][1u - p].est_fanouts );
      if ( ( !constrained || feasible( n, p, inv ) ) && ( !chosen || better( inv, *chosen, obj ) ) )
        chosen = std::move( inv );
    }
    return chosen;
  };
  const auto chosen0 = with_inverter( 0u, best[0], best[1] );
  const auto chosen1 = with_inverter( 1u, best[1], chosen0 && chosen0->choice.kind != choice_kind::inverter ? chosen0 : std::nullopt );

  if ( !chosen0 || !chosen1 )
  {
    /* no feasible implementation: keep the previous one */
    recompute_node( n );
    return;
  }

  for ( auto p = 0u; p < 2u; ++p )
  {
    auto const& c = p == 0u ? *chosen0 : *chosen1;
    auto& s = states_[n][p];
    s.choice = c.choice;
    s.arrival = c.values.arrival;
    s.area_flow = c.values.area_flow;
    s.mw = c.values.mw;
    s.tw = c.values.tw;
    s.position = c.values.position;
  }
}

void mapper::map_pass( objective obj, bool constrained )
{
  for ( node_id n = g_.first_and(); n < g_.num_nodes(); ++n )
    map_node( n, obj, constrained );
}

void mapper::compute_cover()
{
  refs_.assign( g_.num_nodes(), { 0u, 0u } );
  for ( auto const& o : g_.outputs() )
    if ( o.node() != 0u )
      ++refs_[o.node()][o.complemented() ? 1 : 0];

  for ( node_id n = g_.num_nodes(); n-- > 1u; )
  {
    const uint32_t first = states_[n][1].choice.kind == choice_kind::inverter ? 1u : 0u;
    for ( auto p : { first, 1u - first } )
    {
      if ( refs_[n][p] == 0u )
        continue;
      auto const& ch = states_[n][p].choice;
      if ( ch.kind == choice_kind::inverter )
        ++refs_[n][1u - p];
      else if ( ch.kind == choice_kind::gate )
      {
        auto const& cu = cuts_.cuts( n )[ch.cut];
        for ( auto i = 0u; i < lib_[ch.m.gate].num_inputs(); ++i )
        {
          const auto leaf = cu.leaves[ch.m.leaf_of_pin[i]];
          if ( leaf != 0u )
            ++refs_[leaf][ch.m.input_negated( i ) ? 1 : 0];
        }
      }
    }
  }
}

void mapper::refresh_estimates()
{
  compute_cover();
  for ( node_id n = 1u; n < g_.num_nodes(); ++n )
    for ( auto p = 0u; p < 2u; ++p )
      states_[n][p].est_fanouts = std::max( 1.0, static_cast<double>( refs_[n][p] ) );
}

void mapper::compute_required( double limit )
{
  for ( auto& s : states_ )
    for ( auto& ph : s )
      ph.required = infinity;
  for ( auto const& o : g_.outputs() )
    if ( o.node() != 0u )
      states_[o.node()][o.complemented() ? 1 : 0].required = limit;

  for ( node_id n = g_.num_nodes(); n-- > 1u; )
  {
    const uint32_t first = states_[n][1].choice.kind == choice_kind::inverter ? 1u : 0u;
    for ( auto p : { first, 1u - first } )
    {
      auto const& s = states_[n][p];
      if ( refs_[n][p] == 0u || std::isinf( s.required ) )
        continue;
      if ( s.choice.kind == choice_kind::inverter )
      {
        auto& r = states_[n][1u - p].required;
        r = std::min( r, s.required - inv_delay_ );
      }
      else if ( s.choice.kind == choice_kind::gate )
      {
        auto const& cu = cuts_.cuts( n )[s.choice.cut];
        for ( auto i = 0u; i < lib_[s.choice.m.gate].num_inputs(); ++i )
        {
          const auto leaf = cu.leaves[s.choice.m.leaf_of_pin[i]];
          if ( leaf == 0u )
            continue;
          auto& r = states_[leaf][s.choice.m.input_negated( i ) ? 1 : 0].required;
          r = std::min( r, s.required - pin_delay( s.choice, i ) );
        }
      }
    }
  }
}

void mapper::compute_wl_budgets( double limit )
{
  for ( auto& b : budgets_ )
  {
    b[0].clear();
    b[1].clear();
  }
  for ( auto const& o : g_.outputs() )
    if ( o.node() != 0u )
      budgets_[o.node()][o.complemented() ? 1 : 0].push_back( { point{}, limit, true } );

  for ( node_id n = g_.num_nodes(); n-- > 1u; )
  {
    const uint32_t first = states_[n][1].choice.kind == choice_kind::inverter ? 1u : 0u;
    for ( auto p : { first, 1u - first } )
    {
      auto const& s = states_[n][p];
      if ( refs_[n][p] == 0u || budgets_[n][p].empty() )
        continue;
      double own = infinity;
      for ( auto const& b : budgets_[n][p] )
        own = std::min( own, b.limit - ( b.colocated ? 0.0 : manhattan( b.position, s.position ) ) );

      if ( s.choice.kind == choice_kind::inverter )
        budgets_[n][1u - p].push_back( { s.position, own, true } );
      else if ( s.choice.kind == choice_kind::gate )
      {
        auto const& cu = cuts_.cuts( n )[s.choice.cut];
        for ( auto i = 0u; i < lib_[s.choice.m.gate].num_inputs(); ++i )
        {
          const auto leaf = cu.leaves[s.choice.m.leaf_of_pin[i]];
          const auto q = s.choice.m.input_negated( i ) ? 1 : 0;
          if ( leaf == 0u || states_[leaf][q].choice.kind == choice_kind::tie )
            continue;
          budgets_[leaf][q].push_back( { s.position, own, false } );
        }
      }
    }
  }
}

void mapper::finalize()
{
  refresh_estimates();
  for ( node_id n = g_.first_and(); n < g_.num_nodes(); ++n )
    recompute_node( n );
}

double mapper::choice_area( phase_choice const& ch ) const
{
  if ( ch.kind == choice_kind::gate )
    return lib_[ch.m.gate].area;
  if ( ch.kind == choice_kind::inverter )
    return inv_area_;
  return 0.0;
}

mapping_metrics mapper::metrics() const
{
  mapping_metrics m;
  for ( auto const& o : g_.outputs() )
  {
    if ( o.node() == 0u )
      continue;
    auto const& s = states_[o.node()][o.complemented() ? 1 : 0];
    m.delay = std::max( m.delay, s.arrival );
    m.critical_wl = std::max( m.critical_wl, s.mw );
    m.total_wl += s.tw / s.est_fanouts;
  }
  for ( node_id n = 1u; n < g_.num_nodes(); ++n )
    for ( auto p = 0u; p < 2u; ++p )
      if ( refs_[n][p] > 0u )
        m.area += choice_area( states_[n][p].choice );
  return m;
}

void mapper::record( std::string pass, uint32_t iteration, bool accepted )
{
  trace_.push_back( { std::move( pass ), iteration, metrics(), accepted } );
}

void mapper::delay_map()
{
  use_budgets_ = false;
  map_pass( objective::delay, false );
  finalize();
  delay_states_ = states_;
  constraints_.global_time = metrics().delay;
  record( "delay_map", 1u, true );
}

void mapper::global_area_map()
{
  if ( !constraints_.global_time )
    throw std::logic_error( "global_area_map requires a timing constraint; run delay_map first" );
  const auto limit = *constraints_.global_time;
  required_tol_ = 1e-12 * std::max( 1.0, limit );

  const auto snapshot = states_;
  const auto before = metrics();
  refresh_estimates();
  compute_required( limit );
  use_budgets_ = false;
  map_pass( objective::area, true );
  finalize();

  const auto after = metrics();
  const bool accepted = within( after.area, before.area ) && within( after.delay, limit );
  if ( !accepted )
  {
    states_ = snapshot;
    finalize();
  }
  constraints_.global_time = metrics().delay;
  record( "global_area_map", 1u, accepted );
}

void mapper::wirelength_map( strategy s )
{
  if ( s == strategy::delay_only )
    return;
  if ( !constraints_.global_time )
    throw std::logic_error( "wirelength_map requires a timing constraint; run delay_map first" );
  const auto limit = *constraints_.global_time;
  required_tol_ = 1e-12 * std::max( 1.0, limit );

  auto target = [s]( mapping_metrics const& m ) { return s == strategy::performance ? m.critical_wl : m.total_wl; };

  /* the same iterations are run from the current cover and from the delay-oriented cover */
  const auto first_record = trace_.size();
  run_wirelength_iterations( s, 0u );
  const auto from_current = states_;
  const auto current_metrics = metrics();
  const auto second_record = trace_.size();

  states_ = delay_states_;
  finalize();
  if ( within( metrics().delay, limit ) )
    run_wirelength_iterations( s, ps_.wl_iterations );

  const auto other = metrics();
  const auto c = compare( target( other ), target( current_metrics ) );
  const bool keep_other = within( other.delay, limit ) && ( c < 0 || ( c == 0 && compare( other.area, current_metrics.area ) < 0 ) );
  if ( !keep_other )
  {
    states_ = from_current;
    finalize();
  }
  for ( auto i = keep_other ? first_record : second_record; i < ( keep_other ? second_record : trace_.size() ); ++i )
    trace_[i].accepted = false;

  if ( s == strategy::performance )
    constraints_.critical_wl = metrics().critical_wl;
  else
    constraints_.global_wl = metrics().total_wl;
}

void mapper::run_wirelength_iterations( strategy s, uint32_t first_iteration )
{
  const auto limit = *constraints_.global_time;
  const auto entry = metrics();
  score_time_ = limit > 0.0 ? limit : 1.0;
  score_wl_ = entry.critical_wl > 0.0 ? entry.critical_wl : 1.0;

  for ( auto it = 1u; it <= ps_.wl_iterations; ++it )
  {
    const auto snapshot = states_;
    const auto before = metrics();
    refresh_estimates();
    compute_required( limit );
    if ( s == strategy::performance )
    {
      compute_wl_budgets( before.critical_wl );
      use_budgets_ = true;
    }
    map_pass( s == strategy::performance ? objective::performance : objective::power, true );
    use_budgets_ = false;
    finalize();

    const auto after = metrics();
    bool accepted = within( after.delay, limit );
    if ( s == strategy::performance )
      accepted = accepted && within( after.critical_wl, before.critical_wl );
    else
      accepted = accepted && within( after.total_wl, before.total_wl );
    if ( !accepted )
    {
      states_ = snapshot;
      finalize();
    }
    record( "wirelength_map", first_iteration + it, accepted );
  }
}

double mapper::input_wire( node_id n, uint32_t p ) const
{
  auto const& s = states_[n][p];
  if ( s.choice.kind != choice_kind::gate )
    return 0.0;
  double total = 0.0;
  auto const& cu = cuts_.cuts( n )[s.choice.cut];
  for ( auto i = 0u; i < lib_[s.choice.m.gate].num_inputs(); ++i )
  {
    const auto leaf = cu.leaves[s.choice.m.leaf_of_pin[i]];
    auto const& l = states_[leaf][s.choice.m.input_negated( i ) ? 1 : 0];
    if ( leaf != 0u && l.choice.kind != choice_kind::tie )
      total += manhattan( s.position, l.position );
  }
  return total;
}

template<bool Ref>
mapper::cone_cost mapper::walk_cone( node_id n, uint32_t p )
{
  auto const& ch = states_[n][p].choice;
  cone_cost cost{ choice_area( ch ), input_wire( n, p ) };
  auto visit = [&]( node_id leaf, uint32_t q ) {
    if ( leaf == 0u )
      return;
    auto& r = refs_[leaf][q];
    if ( Ref ? r++ == 0u : --r == 0u )
    {
      const auto sub = walk_cone<Ref>( leaf, q );
      cost.area += sub.area;
      cost.wire += sub.wire;
    }
  };
  if ( ch.kind == choice_kind::inverter )
    visit( n, 1u - p );
  else if ( ch.kind == choice_kind::gate )
  {
    auto const& cu = cuts_.cuts( n )[ch.cut];
    for ( auto i = 0u; i < lib_[ch.m.gate].num_inputs(); ++i )
      visit( cu.leaves[ch.m.leaf_of_pin[i]], ch.m.input_negated( i ) ? 1u : 0u );
  }
  return cost;
}

mapper::cone_cost mapper::ref_cone( node_id n, uint32_t p )
{
  return walk_cone<true>( n, p );
}

mapper::cone_cost mapper::deref_cone( node_id n, uint32_t p )
{
  return walk_cone<false>( n, p );
}

void mapper::detail_pass()
{
  /* gate-choice parents of every cover phase; a parent keeps its position until it is visited */
  std::vector<std::array<std::vector<uint32_t>, 2>> parents( g_.num_nodes() );
  for ( node_id n = g_.first_and(); n < g_.num_nodes(); ++n )
  {
    for ( auto p = 0u; p < 2u; ++p )
    {
      auto const& ch = states_[n][p].choice;
      if ( refs_[n][p] == 0u || ch.kind != choice_kind::gate )
        continue;
      auto const& cu = cuts_.cuts( n )[ch.cut];
      for ( auto i = 0u; i < lib_[ch.m.gate].num_inputs(); ++i )
      {
        const auto leaf = cu.leaves[ch.m.leaf_of_pin[i]];
        if ( leaf != 0u )
          parents[leaf][ch.m.input_negated( i ) ? 1 : 0].push_back( ( n << 1u ) | p );
      }
    }
  }

  /* wire between a phase (and an inverter sitting on it) and its cover parents */
  auto fanout_wire = [&]( node_id n, uint32_t p, point const& pos ) {
    double total = 0.0;
    for ( auto const ref : parents[n][p] )
      total += manhattan( states_[ref >> 1u][ref & 1u].position, pos );
    if ( states_[n][1u - p].choice.kind == choice_kind::inverter && refs_[n][1u - p] > 0u )
      for ( auto const ref : parents[n][1u - p] )
        total += manhattan( states_[ref >> 1u][ref & 1u].position, pos );
    return total;
  };

  const auto wire_limit = constraints_.global_wl;
  double wire = 0.0;
  for ( node_id n = g_.first_and(); n < g_.num_nodes(); ++n )
    for ( auto p = 0u; p < 2u; ++p )
      if ( refs_[n][p] > 0u )
        wire += input_wire( n, p );

  for ( node_id n = g_.first_and(); n < g_.num_nodes(); ++n )
  {
    recompute_node( n );
    for ( auto p = 0u; p < 2u; ++p )
    {
      if ( refs_[n][p] == 0u )
        continue;

      auto& s = states_[n][p];
      if ( auto const& other = states_[n][1u - p]; other.choice.kind == choice_kind::inverter && refs_[n][1u - p] > 0u )
      {
        s.required = std::min( s.required, other.required - inv_delay_ );
        auto& own = budgets_[n][p];
        own.insert( own.end(), budgets_[n][1u - p].begin(), budgets_[n][1u - p].end() );
      }
      const auto old_choice = s.choice;
      const auto old_position = s.position;
      const auto old_fanout = fanout_wire( n, p, old_position );
      const auto old_cost = deref_cone( n, p );

      phase_choice best = old_choice;
      point best_position = old_position;
      double best_area = old_cost.area;
      double best_delta = 0.0;

      auto consider = [&]( candidate const& c ) {
        if ( !feasible( n, p, c ) )
          return;
        s.choice = c.choice;
        s.position = c.values.position;
        const auto cost = ref_cone( n, p );
        deref_cone( n, p );
        if ( compare( cost.area, best_area ) >= 0 )
          return;
        const auto delta = ( cost.wire - old_cost.wire ) + ( fanout_wire( n, p, c.values.position ) - old_fanout );
        if ( wire_limit && !within( wire + delta, *wire_limit ) )
          return;
        best = c.choice;
        best_position = c.values.position;
        best_area = cost.area;
        best_delta = delta;
      };

      const auto num_cuts = static_cast<uint32_t>( cuts_.cuts( n ).size() );
      for ( auto c = 1u; c < num_cuts; ++c )
      {
        if ( const auto v = cut_constant_[n][c]; v >= 0 )
        {
          consider( evaluate_tie( n, c, ( v == 1 ) != ( p == 1u ) ) );
          continue;
        }
        for ( auto const& m : *cut_matches_[n][c] )
          if ( ( m.output_negated ? 1u : 0u ) == p )
            consider( evaluate_gate( n, c, m ) );
      }
      if ( states_[n][1u - p].choice.kind != choice_kind::inverter )
        consider( evaluate_inverter( n, states_[n][1u - p], states_[n][1u - p].est_fanouts ) );

      s.choice = best;
      s.position = best_position;
      ref_cone( n, p );
      wire += best_delta;
      recompute_node( n );
    }
  }
}

void mapper::detail_area_map()
{
  if ( !constraints_.global_time )
    throw std::logic_error( "detail_area_map requires a timing constraint; run delay_map first" );
  const auto limit = *constraints_.global_time;
  required_tol_ = 1e-12 * std::max( 1.0, limit );

  for ( auto it = 1u; it <= ps_.detail_iterations; ++it )
  {
    const auto snapshot = states_;
    const auto before = metrics();
    refresh_estimates();
    compute_required( limit );
    if ( constraints_.critical_wl )
    {
      compute_wl_budgets( *constraints_.critical_wl );
      use_budgets_ = true;
    }
    detail_pass();
    use_budgets_ = false;
    finalize();

    const auto after = metrics();
    bool accepted = within( after.area, before.area ) && within( after.delay, limit );
    if ( constraints_.critical_wl )
      accepted = accepted && within( after.critical_wl, *constraints_.critical_wl );
    if ( constraints_.global_wl )
      accepted = accepted && within( after.total_wl, *constraints_.global_wl );
    if ( !accepted )
    {
      states_ = snapshot;
      finalize();
    }
    const auto current = metrics();
    if ( constraints_.critical_wl )
      constraints_.critical_wl = std::min( *constraints_.critical_wl, current.critical_wl );
    if ( constraints_.global_wl )
      constraints_.global_wl = std::min( *constraints_.global_wl, current.total_wl );
    record( "detail_area_map", it, accepted );
  }
}

netlist mapper::gen_netlist() const
{
  netlist nl;
  constexpr uint32_t none = std::numeric_limits<uint32_t>::max();
  std::vector<std::array<uint32_t, 2>> nets( g_.num_nodes(), { none, none } );
  std::array<uint32_t, 2> const_nets{ none, none };

  auto constant_net = [&]( bool value ) {
    auto& net = const_nets[value ? 1 : 0];
    if ( net == none )
    {
      net = nl.add_net( value ? "const1" : "const0" );
      nl.constants.emplace_back( net, value );
    }
    return net;
  };
  auto net_of = [&]( node_id n, uint32_t p ) {
    if ( n == 0u )
      return constant_net( p == 1u );
    if ( nets[n][p] == none )
      throw std::logic_error( "open cover: phase " + std::to_string( p ) + " of node " + std::to_string( n ) + " has no implementation" );
    return nets[n][p];
  };
  auto name_of = [&]( node_id n, uint32_t p ) { return "n" + std::to_string( n ) + ( p == 1u ? "_n" : "" ); };

  for ( auto i = 0u; i < g_.num_pis(); ++i )
  {
    const auto net = nl.add_net( "pi" + std::to_string( i ) );
    nl.pi_nets.push_back( net );
    nets[g_.pi_node( i )][0] = net;
  }

  for ( node_id n = 1u; n < g_.num_nodes(); ++n )
  {
    const uint32_t first = states_[n][0].choice.kind == choice_kind::inverter ? 1u : 0u;
    for ( auto p : { first, 1u - first } )
    {
      if ( refs_[n][p] == 0u )
        continue;
      auto const& ch = states_[n][p].choice;
      switch ( ch.kind )
      {
      case choice_kind::pi:
        break;
      case choice_kind::tie:
        nets[n][p] = nl.add_net( name_of( n, p ) );
        nl.constants.emplace_back( nets[n][p], ch.m.output_negated );
        break;
      case choice_kind::inverter:
      {
        netlist::instance inst;
        inst.gate = lib_.inverter_index();
        inst.inputs.push_back( net_of( n, 1u - p ) );
        inst.output = nets[n][p] = nl.add_net( name_of( n, p ) );
        nl.instances.push_back( std::move( inst ) );
        break;
      }
      case choice_kind::gate:
      {
        auto const& cu = cuts_.cuts( n )[ch.cut];
        netlist::instance inst;
        inst.gate = ch.m.gate;
        for ( auto i = 0u; i < lib_[ch.m.gate].num_inputs(); ++i )
          inst.inputs.push_back( net_of( cu.leaves[ch.m.leaf_of_pin[i]], ch.m.input_negated( i ) ? 1u : 0u ) );
        inst.output = nets[n][p] = nl.add_net( name_of( n, p ) );
        nl.instances.push_back( std::move( inst ) );
        break;
      }
      default:
        throw std::logic_error( "open cover: phase " + std::to_string( p ) + " of node " + std::to_string( n ) + " has no implementation" );
      }
    }
  }

  for ( auto const& o : g_.outputs() )
    nl.po_nets.push_back( net_of( o.node(), o.complemented() ? 1u : 0u ) );
  return nl;
}

} // namespace pigmap
