#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "library.hpp"

namespace pigmap
{

/*! \brief Combinational gate-level netlist over a tech_library.
 *
 * Instances are stored in topological order. Nets are indices into
 * `net_names`.
 */
struct netlist
{
  struct instance
  {
    uint32_t gate{0};
    /*! \brief Net per gate pin. */
    std::vector<uint32_t> inputs;
    uint32_t output{0};
  };

  std::vector<std::string> net_names;
  /*! \brief Net of PI `i`, named `pi<i>`. */
  std::vector<uint32_t> pi_nets;
  /*! \brief Net read by PO `j`. */
  std::vector<uint32_t> po_nets;
  /*! \brief Nets tied to a constant value. */
  std::vector<std::pair<uint32_t, bool>> constants;
  std::vector<instance> instances;

  uint32_t add_net( std::string name )
  {
    net_names.push_back( std::move( name ) );
    return static_cast<uint32_t>( net_names.size() - 1u );
  }
};

double netlist_area( netlist const& nl, tech_library const& lib );

/*! \brief Word-parallel simulation, one word per PI, one word per PO. */
std::vector<uint64_t> simulate_netlist( netlist const& nl, tech_library const& lib, std::span<const uint64_t> pi_words );

/*! \brief Structural Verilog with ports `pi<i>` / `po<j>` and one cell
 * instance per netlist instance. */
std::string write_verilog( netlist const& nl, tech_library const& lib, std::string const& module_name = "top" );

} // namespace pigmap
