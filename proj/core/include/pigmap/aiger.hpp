#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "aig.hpp"

namespace pigmap
{

/*! \brief Malformed AIGER input; `offset` is the byte position of the problem. */
class aiger_error : public std::runtime_error
{
public:
  aiger_error( size_t offset, std::string const& what )
      : std::runtime_error( "AIGER parse error at byte " + std::to_string( offset ) + ": " + what ), offset_( offset ) {}

  size_t offset() const { return offset_; }

private:
  size_t offset_;
};

/*! \brief Parses combinational ASCII (`aag`) or binary (`aig`) AIGER.
 *
 * AIGER variables are renumbered densely: inputs become nodes
 * `1..I` in declaration order and AND gates follow in a topological
 * order that preserves file order whenever the file is already sorted.
 * Symbol tables and comments are ignored.
 */
aig read_aiger( std::string_view bytes );

aig read_aiger_file( std::filesystem::path const& path );

/*! \brief Emits canonical ASCII AIGER (`aag`): PI `i` is literal `2(i+1)`. */
std::string write_aiger( aig const& g );

} // namespace pigmap
