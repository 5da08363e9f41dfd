#include <benchmark/benchmark.h>

#include <pigmap/cuts.hpp>
#include <pigmap/flow.hpp>
#include <pigmap/generators.hpp>
#include <pigmap/library.hpp>
#include <pigmap/placement.hpp>

using namespace pigmap;

namespace
{

aig design( int64_t ands )
{
  return random_aig( 64u, static_cast<uint32_t>( ands ), 32u, 42u );
}

void bm_enumerate_cuts( benchmark::State& state )
{
  const auto g = design( state.range( 0 ) );
  for ( auto _ : state )
    benchmark::DoNotOptimize( enumerate_cuts( g, {} ) );
  state.SetItemsProcessed( state.iterations() * state.range( 0 ) );
}

void bm_place( benchmark::State& state )
{
  const auto g = design( state.range( 0 ) );
  const auto r = floorplan( g, {} );
  for ( auto _ : state )
    benchmark::DoNotOptimize( place( g, r, {} ) );
  state.SetItemsProcessed( state.iterations() * state.range( 0 ) );
}

void bm_flow( benchmark::State& state )
{
  const auto g = design( state.range( 0 ) );
  const auto lib = read_genlib_file( PIGMAP_DATA_DIR "/cells.genlib" );
  flow_config cfg;
  cfg.mode = static_cast<strategy>( state.range( 1 ) );
  for ( auto _ : state )
    benchmark::DoNotOptimize( run_flow( g, lib, cfg ) );
  state.SetLabel( std::string( to_string( cfg.mode ) ) );
  state.SetItemsProcessed( state.iterations() * state.range( 0 ) );
}

} // namespace

BENCHMARK( bm_enumerate_cuts )->Arg( 1000 )->Arg( 10000 )->Unit( benchmark::kMillisecond );
BENCHMARK( bm_place )->Arg( 1000 )->Arg( 10000 )->Unit( benchmark::kMillisecond );
BENCHMARK( bm_flow )->ArgsProduct( { { 1000, 10000 }, { 0, 1, 2 } } )->Unit( benchmark::kMillisecond );

BENCHMARK_MAIN();
