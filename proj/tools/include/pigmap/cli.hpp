#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pigmap
{

/*! \brief Exit codes of the command-line front end. */
enum exit_code : int
{
  exit_ok = 0,
  exit_usage = 1,
  exit_io = 2,
  exit_infeasible = 3
};

/*! \brief Runs `pigmap` with the given arguments (without the program
 * name); diagnostics go to `err`, reports without a target path to `out`. */
int run_cli( std::vector<std::string> const& args, std::ostream& out, std::ostream& err );

} // namespace pigmap
