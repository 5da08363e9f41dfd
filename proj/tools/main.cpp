#include <iostream>
#include <string>
#include <vector>

#include "pigmap/cli.hpp"

int main( int argc, char** argv )
{
  std::vector<std::string> args( argv + 1, argv + argc );
  return pigmap::run_cli( args, std::cout, std::cerr );
}
