#include "pigmap/netlist.hpp"

#include <sstream>
#include <stdexcept>

namespace pigmap
{

double netlist_area( netlist const& nl, tech_library const& lib )
{
  double area = 0.0;
  for ( auto const& inst : nl.instances )
    area += lib[inst.gate].area;
  return area;
}

std::vector<uint64_t> simulate_netlist( netlist const& nl, tech_library const& lib, std::span<const uint64_t> pi_words )
{
  if ( pi_words.size() != nl.pi_nets.size() )
    throw std::invalid_argument( "expected " + std::to_string( nl.pi_nets.size() ) + " input words, got " + std::to_string( pi_words.size() ) );

  std::vector<uint64_t> values( nl.net_names.size(), 0u );
  for ( auto i = 0u; i < nl.pi_nets.size(); ++i )
    values[nl.pi_nets[i]] = pi_words[i];
  for ( auto const& [net, value] : nl.constants )
    values[net] = value ? ~uint64_t{0} : 0u;

  for ( auto const& inst : nl.instances )
  {
    auto const& fn = lib[inst.gate].function;
    uint64_t out = 0u;
    for ( auto m = 0u; m < fn.num_bits(); ++m )
    {
      if ( !fn.get_bit( m ) )
        continue;
      uint64_t term = ~uint64_t{0};
      for ( auto i = 0u; i < inst.inputs.size(); ++i )
        term &= ( ( m >> i ) & 1u ) ? values[inst.inputs[i]] : ~values[inst.inputs[i]];
      out |= term;
    }
    values[inst.output] = out;
  }

  std::vector<uint64_t> res;
  res.reserve( nl.po_nets.size() );
  for ( auto const net : nl.po_nets )
    res.push_back( values[net] );
  return res;
}

std::string write_verilog( netlist const& nl, tech_library const& lib, std::string const& module_name )
{
  std::ostringstream os;
  os << "module " << module_name << " (";
  bool first = true;
  for ( auto i = 0u; i < nl.pi_nets.size(); ++i, first = false )
    os << ( first ? "" : ", " ) << "pi" << i;
  for ( auto j = 0u; j < nl.po_nets.size(); ++j, first = false )
    os << ( first ? "" : ", " ) << "po" << j;
  os << ");\n";

  for ( auto i = 0u; i < nl.pi_nets.size(); ++i )
    os << "  input pi" << i << ";\n";
  for ( auto j = 0u; j < nl.po_nets.size(); ++j )
    os << "  output po" << j << ";\n";

  std::vector<bool> is_port( nl.net_names.size(), false );
  for ( auto const net : nl.pi_nets )
    is_port[net] = true;
  for ( auto n = 0u; n < nl.net_names.size(); ++n )
    if ( !is_port[n] )
      os << "  wire " << nl.net_names[n] << ";\n";

  for ( auto const& [net, value] : nl.constants )
    os << "  assign " << nl.net_names[net] << " = 1'b" << ( value ? '1' : '0' ) << ";\n";

  for ( auto k = 0u; k < nl.instances.size(); ++k )
  {
    auto const& inst = nl.instances[k];
    auto const& g = lib[inst.gate];
    os << "  " << g.name << " g" << k << " (";
    for ( auto i = 0u; i < inst.inputs.size(); ++i )
      os << "." << g.pin_names[i] << "(" << nl.net_names[inst.inputs[i]] << "), ";
    os << "." << g.output_name << "(" << nl.net_names[inst.output] << "));\n";
  }

  for ( auto j = 0u; j < nl.po_nets.size(); ++j )
    os << "  assign po" << j << " = " << nl.net_names[nl.po_nets[j]] << ";\n";
  os << "endmodule\n";
  return os.str();
}

} // namespace pigmap
