#include "pigmap/cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "pigmap/aiger.hpp"
#include "pigmap/flow.hpp"
#include "pigmap/library.hpp"

namespace pigmap
{

namespace
{

struct options
{
  std::string input;
  std::string lib;
  std::string strategy_name{"performance"};
  uint32_t k{4};
  uint32_t cut_limit{16};
  uint32_t pin_depth{5};
  double wl_weight{0.5};
  uint64_t seed{0};
  std::string out;
  std::string report;
  std::string svg;
  std::string compare_dir;
};

class cli_failure : public std::runtime_error
{
public:
  cli_failure( int code, std::string const& what ) : std::runtime_error( what ), code_( code ) {}
  int code() const { return code_; }

private:
  int code_;
};

void write_file( std::string const& path, std::string const& contents )
{
  std::ofstream os( path, std::ios::binary );
  if ( !os )
    throw cli_failure( exit_io, "cannot write " + path );
  os << contents;
  if ( !os )
    throw cli_failure( exit_io, "cannot write " + path );
}

aig load_aig( std::filesystem::path const& path )
{
  if ( !std::filesystem::is_regular_file( path ) )
    throw cli_failure( exit_io, "cannot open input " + path.string() );
  try
  {
    return read_aiger_file( path );
  }
  catch ( std::exception const& e )
  {
    throw cli_failure( exit_io, path.string() + ": " + e.what() );
  }
}

tech_library load_library( std::string const& path, std::ostream& err )
{
  if ( !std::filesystem::is_regular_file( path ) )
    throw cli_failure( exit_io, "cannot open library " + path );
  std::vector<std::string> warnings;
  try
  {
    auto lib = read_genlib_file( path, &warnings );
    for ( auto const& w : warnings )
      err << "warning: " << path << ": " << w << '\n';
    return lib;
  }
  catch ( std::exception const& e )
  {
    throw cli_failure( exit_io, path + ": " + e.what() );
  }
}

flow_result map_design( aig const& g, tech_library const& lib, flow_config const& cfg )
{
  try
  {
    return run_flow( g, lib, cfg );
  }
  catch ( mapping_error const& e )
  {
    throw cli_failure( exit_infeasible, e.what() );
  }
}

flow_config make_config( options const& opt, strategy s )
{
  flow_config cfg;
  cfg.mode = s;
  cfg.cuts.k = opt.k;
  cfg.cuts.cut_limit = opt.cut_limit;
  cfg.cuts.pin_depth = opt.pin_depth;
  cfg.placement.seed = opt.seed;
  cfg.mapping.wl_weight = opt.wl_weight;
  return cfg;
}

std::string module_name( std::filesystem::path const& path )
{
  auto name = path.stem().string();
  for ( auto& c : name )
    if ( !std::isalnum( static_cast<unsigned char>( c ) ) )
      c = '_';
  if ( name.empty() || std::isdigit( static_cast<unsigned char>( name[0] ) ) )
    name = "m_" + name;
  return name;
}

int run_single( options const& opt, std::ostream& out, std::ostream& err )
{
  const auto s = *parse_strategy( opt.strategy_name );
  const auto g = load_aig( opt.input );
  const auto lib = load_library( opt.lib, err );
  const auto res = map_design( g, lib, make_config( opt, s ) );

  if ( !opt.out.empty() )
    write_file( opt.out, write_verilog( res.mapped, lib, module_name( opt.input ) ) );
  if ( !opt.svg.empty() )
    write_file( opt.svg, placement_to_svg( g, res.layout ) );
  const auto json = report_to_json( res.report );
  if ( opt.report.empty() )
    out << json;
  else
    write_file( opt.report, json );
  return exit_ok;
}

std::string ratio( double value, double baseline )
{
  std::ostringstream os;
  os << std::setprecision( 6 );
  if ( baseline == 0.0 )
    os << ( value == 0.0 ? 1.0 : std::numeric_limits<double>::infinity() );
  else
    os << value / baseline;
  return os.str();
}

int run_compare( options const& opt, std::ostream& out, std::ostream& err )
{
  const std::filesystem::path dir( opt.compare_dir );
  if ( !std::filesystem::is_directory( dir ) )
    throw cli_failure( exit_io, "cannot open directory " + opt.compare_dir );
  const auto lib = load_library( opt.lib, err );

  std::vector<std::filesystem::path> designs;
  for ( auto const& entry : std::filesystem::directory_iterator( dir ) )
  {
    const auto ext = entry.path().extension();
    if ( entry.is_regular_file() && ( ext == ".aag" || ext == ".aig" ) )
      designs.push_back( entry.path() );
  }
  std::sort( designs.begin(), designs.end() );

  std::ostringstream csv;
  csv << "design,strategy,mapped_delay,exact_area,virtual_critical_wl,virtual_total_wl,runtime_ms\n";
  int status = exit_ok;
  for ( auto const& path : designs )
  {
    const auto design = path.filename().string();
    std::optional<mapping_metrics> baseline;
    for ( auto const s : { strategy::delay_only, strategy::performance, strategy::power } )
    {
      try
      {
        const auto g = load_aig( path );
        const auto start = std::chrono::steady_clock::now();
        const auto res = map_design( g, lib, make_config( opt, s ) );
        const auto ms = std::chrono::duration<double, std::milli>( std::chrono::steady_clock::now() - start ).count();
        auto const& m = res.report.final_metrics;
        if ( s == strategy::delay_only )
          baseline = m;
        if ( !baseline )
          throw cli_failure( exit_infeasible, "baseline mapping failed" );
        csv << design << ',' << to_string( s ) << ',' << ratio( m.delay, baseline->delay ) << ',' << ratio( m.area, baseline->area ) << ','
            << ratio( m.critical_wl, baseline->critical_wl ) << ',' << ratio( m.total_wl, baseline->total_wl ) << ',' << std::fixed
            << std::setprecision( 3 ) << ms << std::defaultfloat << '\n';
      }
      catch ( cli_failure const& e )
      {
        err << "error: " << design << " (" << to_string( s ) << "): " << e.what() << '\n';
        csv << design << ',' << to_string( s ) << ",failed,failed,failed,failed,failed\n";
        status = std::max( status, e.code() );
      }
    }
  }

  if ( opt.report.empty() )
    out << csv.str();
  else
    write_file( opt.report, csv.str() );
  return status;
}

} // namespace

int run_cli( std::vector<std::string> const& args, std::ostream& out, std::ostream& err )
{
  options opt;
  CLI::App app{ "Placement-aware technology mapping of and-inverter graphs", "pigmap" };
  app.add_option( "--input", opt.input, "AIGER file to map (aag or aig)" );
  app.add_option( "--lib", opt.lib, "genlib cell library" )->required();
  app.add_option( "--strategy", opt.strategy_name, "delay, performance or power" )
      ->check( CLI::IsMember( { "delay", "performance", "power" } ) );
  app.add_option( "--k", opt.k, "maximum cut size" )->check( CLI::Range( 2u, 6u ) );
  app.add_option( "--cut-limit", opt.cut_limit, "priority cuts kept per node" )->check( CLI::PositiveNumber );
  app.add_option( "--pin-depth", opt.pin_depth, "pin search depth limit" );
  app.add_option( "--wl-weight", opt.wl_weight, "arrival weight of the Performance score" )->check( CLI::Range( 0.0, 1.0 ) );
  app.add_option( "--seed", opt.seed, "placement seed" );
  app.add_option( "--out", opt.out, "structural Verilog output" );
  app.add_option( "--report", opt.report, "JSON report (CSV with --compare-dir); stdout if omitted" );
  app.add_option( "--svg", opt.svg, "placement drawing" );
  app.add_option( "--compare-dir", opt.compare_dir, "map every AIGER file of a directory with all strategies" );

  std::vector<std::string> reversed( args.rbegin(), args.rend() );
  try
  {
    app.parse( reversed );
    if ( opt.compare_dir.empty() && opt.input.empty() )
      throw CLI::RequiredError( "--input" );
  }
  catch ( CLI::CallForHelp const& )
  {
    out << app.help();
    return exit_ok;
  }
  catch ( CLI::ParseError const& e )
  {
    err << "usage error: " << e.what() << '\n';
    return exit_usage;
  }

  try
  {
    return opt.compare_dir.empty() ? run_single( opt, out, err ) : run_compare( opt, out, err );
  }
  catch ( cli_failure const& e )
  {
    err << "error: " << e.what() << '\n';
    return e.code();
  }
  catch ( std::exception const& e )
  {
    err << "error: " << e.what() << '\n';
    return exit_io;
  }
}

} // namespace pigmap
