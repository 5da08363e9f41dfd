#pragma once

#include <string>
#include <vector>

#include "aig.hpp"
#include "cuts.hpp"
#include "library.hpp"
#include "mapper.hpp"
#include "netlist.hpp"
#include "placement.hpp"

namespace pigmap
{

struct flow_config
{
  strategy mode{strategy::performance};
  cut_params cuts;
  place_params placement;
  mapper_params mapping;
};

struct flow_report
{
  strategy mode{strategy::performance};
  mapping_metrics final_metrics;
  std::vector<pass_record> pass_trace;
};

struct flow_result
{
  netlist mapped;
  flow_report report;
  placement layout;
  mapping_constraints constraints;
};

/*! \brief Place, enumerate cuts, then run delay mapping, global area
 * mapping, the strategy's wirelength passes (skipped for delay-only),
 * detailed area mapping and netlist generation. */
flow_result run_flow( aig const& g, tech_library const& lib, flow_config const& cfg );

/*! \brief JSON with keys strategy, mapped_delay, exact_area,
 * virtual_critical_wl, virtual_total_wl and pass_trace. */
std::string report_to_json( flow_report const& report );

} // namespace pigmap
