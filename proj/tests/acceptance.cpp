#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <fmt/format.h>

#include <pigmap/aiger.hpp>
#include <pigmap/cuts.hpp>
#include <pigmap/flow.hpp>
#include <pigmap/generators.hpp>
#include <pigmap/library.hpp>
#include <pigmap/mapper.hpp>
#include <pigmap/placement.hpp>

#include "support/designs.hpp"
#include "support/oracles.hpp"

using namespace pigmap;

namespace
{

struct outcome
{
  bool pass;
  std::string detail;
};

using clock_type = std::chrono::steady_clock;

double seconds_since( clock_type::time_point start )
{
  return std::chrono::duration<double>( clock_type::now() - start ).count();
}

tech_library cell_library()
{
  return read_genlib_file( PIGMAP_DATA_DIR "/cells.genlib" );
}

constexpr strategy all_strategies[] = { strategy::delay_only, strategy::performance, strategy::power };

outcome functional_equivalence()
{
  const auto start = clock_type::now();
  const auto lib = cell_library();
  uint64_t mismatches = 0u, runs = 0u;
  for ( auto const s : all_strategies )
  {
    flow_config cfg;
    cfg.mode = s;
    for ( auto i = 0u; i < 200u; ++i )
    {
      std::mt19937_64 rng( 7u * i + 1u );
      const auto pis = 2u + static_cast<uint32_t>( rng() % 11u );
      const auto ands = 1u + static_cast<uint32_t>( rng() % 80u );
      const auto pos = 1u + static_cast<uint32_t>( rng() % 6u );
      const auto g = random_aig( pis, ands, pos, rng() );
      mismatches += oracle::count_mismatches( g, run_flow( g, lib, cfg ).mapped, lib, i );
      ++runs;
    }
    for ( auto i = 0u; i < 20u; ++i )
    {
      const auto g = random_aig( 20u + 2u * i, 300u + 35u * i, 10u + i, 5000u + i );
      mismatches += oracle::count_mismatches( g, run_flow( g, lib, cfg ).mapped, lib, i, 10000u );
      ++runs;
    }
  }
  const auto t = seconds_since( start );
  return { mismatches == 0u && t < 300.0, fmt::format( "{} mapped designs, {} mismatches, {:.1f} s", runs, mismatches, t ) };
}

outcome c17_fixture()
{
  const auto g = read_aiger_file( PIGMAP_DATA_DIR "/c17.aag" );
  cut_params ps;
  ps.cut_limit = cut_params::unlimited;
  const auto cs = enumerate_cuts( g, ps );

  std::set<std::vector<node_id>> cuts;
  for ( auto const& c : cs.cuts( 8u ) )
    if ( !c.is_trivial() )
      cuts.insert( c.leaves );
  const std::set<std::vector<node_id>> expected_cuts{ { 2u, 7u }, { 2u, 3u, 4u } };

  const auto pins_a = search_pins( g, 8u, std::vector<node_id>{ 2u, 7u }, ps.pin_depth );
  const auto pins_b = search_pins( g, 8u, std::vector<node_id>{ 2u, 3u, 4u }, ps.pin_depth );
  const bool ok = cuts == expected_cuts && pins_a == std::vector<node_id>{ 8u } && pins_b == std::vector<node_id>{ 7u, 8u };
  return { ok, fmt::format( "node 8: {} non-trivial cuts, pins {{{}}} and {{{}}}", cuts.size(), fmt::join( pins_a, "," ), fmt::join( pins_b, "," ) ) };
}

outcome cut_oracle()
{
  uint32_t differing = 0u, compared = 0u;
  for ( auto i = 0u; i < 100u; ++i )
  {
    const auto g = oracle::small_random_aig( 300u + i, 5u, 10u );
    cut_params ps;
    ps.k = 3u + i % 3u;
    ps.cut_limit = cut_params::unlimited;
    const auto cs = enumerate_cuts( g, ps );
    for ( node_id n = 0u; n < g.num_nodes(); ++n )
    {
      std::set<std::vector<node_id>> got;
      for ( auto const& c : cs.cuts( n ) )
        got.insert( c.leaves );
      differing += got != oracle::all_minimal_cuts( g, n, ps.k ) ? 1u : 0u;
      ++compared;
    }
  }
  return { differing == 0u, fmt::format( "{} nodes compared, {} differing cut sets", compared, differing ) };
}

/* every AIG with a single output (both polarities) in which all PIs and
 * ANDs lie in the output cone, at most 4 ANDs, at most 8 nodes */
void for_each_micro_aig( std::function<void( aig const& )> const& fn )
{
  for ( auto pis = 1u; pis <= 4u; ++pis )
    for ( auto ands = 1u; ands <= 4u && 1u + pis + ands <= 8u; ++ands )
    {
      std::vector<std::array<signal, 2>> fanins;
      std::function<void()> grow = [&]() {
        const auto avail = 1u + pis + static_cast<uint32_t>( fanins.size() );
        if ( fanins.size() == ands )
        {
          std::vector<uint32_t> refs( avail, 0u );
          for ( auto const& f : fanins )
          {
            ++refs[f[0].node()];
            ++refs[f[1].node()];
          }
          for ( auto n = 1u; n + 1u < avail; ++n )
            if ( refs[n] == 0u )
              return;
          const auto root = signal::make( avail - 1u );
          fn( aig( pis, fanins, { root, !root } ) );
          return;
        }
        for ( auto a = 0u; a < avail; ++a )
          for ( auto b = a; b < avail; ++b )
            for ( auto ca = 0u; ca < 2u; ++ca )
              for ( auto cb = 0u; cb < 2u; ++cb )
              {
                if ( a == b && ca > cb )
                  continue;
                fanins.push_back( { signal::make( a, ca ), signal::make( b, cb ) } );
                grow();
                fanins.pop_back();
              }
      };
      grow();
    }
}

outcome delay_optimality()
{
  const auto start = clock_type::now();
  const auto lib = parse_genlib( "GATE INV 1 Y=!A; PIN * INV 1 999 1 0 1 0\n"
                                 "GATE NAND2 2 Y=!(A*B); PIN * INV 1 999 1.2 0 1.2 0\n"
                                 "GATE NOR2 2 Y=!(A+B); PIN * INV 1 999 1.5 0 1.5 0\n"
                                 "GATE AOI21 3 Y=!(A*B+C); PIN * INV 1 999 1.9 0 1.9 0\n" );
  cut_params cps;
  cps.cut_limit = cut_params::unlimited;
  oracle::delay_oracle optimum( lib );
  uint64_t count = 0u, wrong = 0u;
  std::string first_wrong;
  for_each_micro_aig( [&]( aig const& g ) {
    ++count;
    const auto cs = enumerate_cuts( g, cps );
    const auto r = floorplan( g, {} );
    const auto pl = place( g, r, {} );
    mapper m( g, cs, lib, pl );
    m.delay_map();
    const auto expected = optimum.min_delay( g, cps.k );
    if ( std::abs( m.metrics().delay - expected ) > 1e-9 )
    {
      if ( wrong++ == 0u )
        first_wrong = fmt::format( "; first mismatch {} vs {}:\n{}", m.metrics().delay, expected, write_aiger( g ) );
    }
  } );
  const auto t = seconds_since( start );
  return { wrong == 0u && t < 60.0, fmt::format( "{} AIGs, {} not optimal, {:.1f} s{}", count, wrong, t, first_wrong ) };
}

outcome constraint_preservation()
{
  const auto lib = cell_library();
  auto designs = oracle::medium_designs();
  designs.push_back( { "c17", read_aiger_file( PIGMAP_DATA_DIR "/c17.aag" ) } );
  for ( auto i = 0u; i < 20u; ++i )
    designs.push_back( { fmt::format( "small_{}", i ), oracle::small_random_aig( 900u + i, 10u, 60u ) } );

  uint32_t violations = 0u, checks = 0u;
  for ( auto const& d : designs )
    for ( auto const s : { strategy::performance, strategy::power } )
    {
      const auto r = floorplan( d.graph, {} );
      const auto pl = place( d.graph, r, {} );
      const auto cs = enumerate_cuts( d.graph, {} );
      mapper m( d.graph, cs, lib, pl );
      m.delay_map();
      auto check = [&]() {
        ++checks;
        const auto limit = *m.constraints().global_time;
        violations += m.metrics().delay <= limit * ( 1.0 + 1e-9 ) ? 0u : 1u;
      };
      m.global_area_map();
      check();
      m.wirelength_map( s );
      check();
      m.detail_area_map();
      check();
    }
  return { violations == 0u, fmt::format( "{} designs x 2 strategies, {} checks, {} violations", designs.size(), checks, violations ) };
}

outcome directional_wirelength()
{
  const auto start = clock_type::now();
  const auto lib = cell_library();
  uint32_t crit_worse = 0u, crit_better = 0u, total_worse = 0u, total_better = 0u, n = 0u;
  std::vector<std::string> notes;
  for ( auto const& d : oracle::medium_designs() )
  {
    flow_config cfg;
    cfg.mode = strategy::delay_only;
    const auto base = run_flow( d.graph, lib, cfg ).report.final_metrics;
    cfg.mode = strategy::performance;
    const auto perf = run_flow( d.graph, lib, cfg ).report.final_metrics;
    cfg.mode = strategy::power;
    const auto power = run_flow( d.graph, lib, cfg ).report.final_metrics;
    ++n;
    const auto tol = 1e-9;
    if ( perf.critical_wl > base.critical_wl * ( 1 + tol ) )
    {
      ++crit_worse;
      notes.push_back( fmt::format( "{} critical {:.4f} > {:.4f}", d.name, perf.critical_wl, base.critical_wl ) );
    }
    if ( perf.critical_wl < base.critical_wl * ( 1 - tol ) )
      ++crit_better;
    if ( power.total_wl > base.total_wl * ( 1 + tol ) )
    {
      ++total_worse;
      notes.push_back( fmt::format( "{} total {:.4f} > {:.4f}", d.name, power.total_wl, base.total_wl ) );
    }
    if ( power.total_wl < base.total_wl * ( 1 - tol ) )
      ++total_better;
  }
  const auto t = seconds_since( start );
  const bool ok = n >= 10u && crit_worse == 0u && total_worse == 0u && 2u * crit_better >= n && 2u * total_better >= n && t < 120.0;
  return { ok, fmt::format( "{} designs; critical WL lower on {}, higher on {}; total WL lower on {}, higher on {}; {:.1f} s{}{}", n, crit_better,
                            crit_worse, total_better, total_worse, t, notes.empty() ? "" : "; ", fmt::join( notes, "; " ) ) };
}

outcome placer_properties()
{
  auto designs = oracle::medium_designs();
  designs.push_back( { "c17", read_aiger_file( PIGMAP_DATA_DIR "/c17.aag" ) } );

  uint32_t nondeterministic = 0u, rising = 0u, hpwl_worse = 0u;
  for ( auto const& d : designs )
  {
    place_params ps;
    ps.seed = 11u;
    const auto r = floorplan( d.graph, ps );
    const auto a = place( d.graph, r, ps );
    const auto b = place( d.graph, r, ps );
    bool same = a.positions.size() == b.positions.size() && a.objective_trace == b.objective_trace;
    for ( auto i = 0u; same && i < a.positions.size(); ++i )
      same = a.positions[i].x == b.positions[i].x && a.positions[i].y == b.positions[i].y;
    nondeterministic += same ? 0u : 1u;

    for ( auto i = 1u; i < a.objective_trace.size(); ++i )
      if ( a.objective_trace[i] > a.objective_trace[i - 1u] * ( 1.0 + 1e-12 ) )
      {
        ++rising;
        break;
      }

    auto start_ps = ps;
    start_ps.max_iterations = 0u;
    const auto initial = place_from( d.graph, r, initial_positions( d.graph, r, ps ), start_ps );
    hpwl_worse += hpwl( d.graph, a ) <= hpwl( d.graph, initial ) ? 0u : 1u;
  }

  /* one movable node between two input terminals and one output terminal */
  aig_builder b;
  const auto x = b.create_pi();
  const auto y = b.create_pi();
  b.create_po( b.create_and( x, y ) );
  const auto g = b.build();
  place_params ps;
  ps.tolerance = 1e-12;
  const auto r = floorplan( g, ps );
  const auto pl = place( g, r, ps );
  const point optimum{ ( r.pi_positions[0].x + r.pi_positions[1].x + r.po_positions[0].x ) / 3.0,
                       ( r.pi_positions[0].y + r.pi_positions[1].y + r.po_positions[0].y ) / 3.0 };
  const auto err = std::hypot( pl.positions[g.first_and()].x - optimum.x, pl.positions[g.first_and()].y - optimum.y );

  const bool ok = nondeterministic == 0u && rising == 0u && hpwl_worse == 0u && err <= 1e-4;
  return { ok, fmt::format( "{} designs; {} nondeterministic, {} with a rising objective, {} with worse final HPWL; analytic error {:.2e}",
                            designs.size(), nondeterministic, rising, hpwl_worse, err ) };
}

outcome metric_consistency()
{
  const auto lib = cell_library();
  auto designs = oracle::medium_designs();
  designs.push_back( { "c17", read_aiger_file( PIGMAP_DATA_DIR "/c17.aag" ) } );
  for ( auto i = 0u; i < 30u; ++i )
    designs.push_back( { fmt::format( "small_{}", i ), oracle::small_random_aig( 1700u + i, 10u, 60u ) } );

  auto close = []( double a, double b ) { return std::abs( a - b ) <= 1e-9 * std::max( { 1.0, std::abs( a ), std::abs( b ) } ); };
  uint32_t mismatches = 0u, covers = 0u;
  std::string first;
  for ( auto const& d : designs )
    for ( auto const s : all_strategies )
    {
      const auto r = floorplan( d.graph, {} );
      const auto pl = place( d.graph, r, {} );
      const auto cs = enumerate_cuts( d.graph, {} );
      mapper m( d.graph, cs, lib, pl );
      auto verify = [&]( char const* stage ) {
        ++covers;
        const auto got = m.metrics();
        const auto want = oracle::recompute( d.graph, cs, lib, pl, m );
        const auto area = netlist_area( m.gen_netlist(), lib );
        const bool ok = close( got.delay, want.delay ) && close( got.area, want.area ) && close( got.area, area ) &&
                        close( got.critical_wl, want.critical_wl ) && close( got.total_wl, want.total_wl ) && close( got.total_wl, want.total_wl_eq4 );
        if ( !ok && mismatches++ == 0u )
          first = fmt::format( "; first: {} {} after {}: delay {} / {}, area {} / {} / {}, critical {} / {}, total {} / {} / {}", d.name, to_string( s ),
                               stage, got.delay, want.delay, got.area, want.area, area, got.critical_wl, want.critical_wl, got.total_wl,
                               want.total_wl, want.total_wl_eq4 );
      };
      m.delay_map();
      verify( "delay_map" );
      if ( s == strategy::delay_only )
      {
        m.global_area_map();
        m.detail_area_map();
        verify( "detail_area_map" );
        continue;
      }
      m.global_area_map();
      verify( "global_area_map" );
      m.wirelength_map( s );
      verify( "wirelength_map" );
      m.detail_area_map();
      verify( "detail_area_map" );
    }
  return { mismatches == 0u, fmt::format( "{} covers checked, {} inconsistent{}", covers, mismatches, first ) };
}

outcome performance_envelope()
{
  const auto lib = cell_library();
  const auto g = random_aig( 128u, 10000u, 64u, 42u );
  const auto start = clock_type::now();
  flow_config cfg;
  cfg.mode = strategy::performance;
  const auto res = run_flow( g, lib, cfg );
  const auto t = seconds_since( start );
  return { t < 60.0, fmt::format( "{} nodes, {} cells, {:.1f} s", g.num_nodes(), res.mapped.instances.size(), t ) };
}

} // namespace

int main()
{
  struct criterion
  {
    char const* name;
    outcome ( *run )();
  };
  const criterion criteria[] = {
      { "functional equivalence", functional_equivalence },
      { "C17 cuts and pins", c17_fixture },
      { "cut enumeration oracle", cut_oracle },
      { "delay optimality", delay_optimality },
      { "constraint preservation", constraint_preservation },
      { "directional wirelength", directional_wirelength },
      { "placer properties", placer_properties },
      { "metric consistency", metric_consistency },
      { "performance envelope", performance_envelope },
  };

  int failed = 0;
  for ( auto i = 0u; i < std::size( criteria ); ++i )
  {
    outcome o;
    try
    {
      o = criteria[i].run();
    }
    catch ( std::exception const& e )
    {
      o = { false, fmt::format( "exception: {}", e.what() ) };
    }
    fmt::print( "AC{} {} {}: {}\n", i + 1u, o.pass ? "PASS" : "FAIL", criteria[i].name, o.detail );
    std::fflush( stdout );
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
