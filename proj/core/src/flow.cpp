#include "pigmap/flow.hpp"

#include <nlohmann/json.hpp>

namespace pigmap
{

flow_result run_flow( aig const& g, tech_library const& lib, flow_config const& cfg )
{
  const auto core = floorplan( g, cfg.placement );
  auto layout = place( g, core, cfg.placement );
  const auto cuts = enumerate_cuts( g, cfg.cuts );

  mapper m( g, cuts, lib, layout, cfg.mapping );
  m.delay_map();
  m.global_area_map();
  m.wirelength_map( cfg.mode );
  m.detail_area_map();

  flow_result res;
  res.mapped = m.gen_netlist();
  res.report.mode = cfg.mode;
  res.report.final_metrics = m.metrics();
  res.report.pass_trace = m.trace();
  res.constraints = m.constraints();
  res.layout = std::move( layout );
  return res;
}

std::string report_to_json( flow_report const& report )
{
  auto metrics_fields = []( nlohmann::ordered_json& j, mapping_metrics const& m ) {
    j["mapped_delay"] = m.delay;
    j["exact_area"] = m.area;
    j["virtual_critical_wl"] = m.critical_wl;
    j["virtual_total_wl"] = m.total_wl;
  };

  nlohmann::ordered_json j;
  j["strategy"] = std::string( to_string( report.mode ) );
  metrics_fields( j, report.final_metrics );
  auto trace = nlohmann::ordered_json::array();
  for ( auto const& r : report.pass_trace )
  {
    nlohmann::ordered_json e;
    e["pass"] = r.pass;
    e["iteration"] = r.iteration;
    metrics_fields( e, r.metrics );
    e["accepted"] = r.accepted;
    trace.push_back( std::move( e ) );
  }
  j["pass_trace"] = std::move( trace );
  return j.dump( 2 ) + "\n";
}

} // namespace pigmap
