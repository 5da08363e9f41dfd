#include "pigmap/aiger.hpp"

#include <fstream>
#include <sstream>
#include <vector>

namespace pigmap
{

namespace
{

class cursor
{
public:
  explicit cursor( std::string_view data ) : data_( data ) {}

  size_t pos() const { return pos_; }
  bool at_end() const { return pos_ >= data_.size(); }

  void expect_char( char c, char const* what )
  {
    if ( at_end() || data_[pos_] != c )
      throw aiger_error( pos_, std::string( "expected " ) + what );
    ++pos_;
  }

  void skip_spaces()
  {
    while ( !at_end() && ( data_[pos_] == ' ' || data_[pos_] == '\t' || data_[pos_] == '\r' ) )
      ++pos_;
  }

  /* consumes the line terminator (end of input accepted) */
  void end_line()
  {
    skip_spaces();
    if ( at_end() )
      return;
    if ( data_[pos_] != '\n' )
      throw aiger_error( pos_, "unexpected trailing characters" );
    ++pos_;
  }

  bool at_line_end()
  {
    skip_spaces();
    return at_end() || data_[pos_] == '\n';
  }

  uint64_t number()
  {
    skip_spaces();
    const auto start = pos_;
    uint64_t value = 0u;
    while ( !at_end() && data_[pos_] >= '0' && data_[pos_] <= '9' )
    {
      value = value * 10u + static_cast<uint64_t>( data_[pos_] - '0' );
      if ( value > 0xffffffffull )
        throw aiger_error( start, "number out of range" );
      ++pos_;
    }
    if ( pos_ == start )
      throw aiger_error( start, "expected unsigned integer" );
    return value;
  }

  std::string_view word()
  {
    skip_spaces();
    const auto start = pos_;
    while ( !at_end() && data_[pos_] != ' ' && data_[pos_] != '\n' && data_[pos_] != '\t' && data_[pos_] != '\r' )
      ++pos_;
    return data_.substr( start, pos_ - start );
  }

  uint64_t varint()
  {
    const auto start = pos_;
    uint64_t value = 0u;
    unsigned shift = 0u;
    while ( true )
    {
      if ( at_end() )
        throw aiger_error( start, "truncated binary AND section" );
      const auto byte = static_cast<unsigned char>( data_[pos_++] );
      value |= uint64_t{ byte & 0x7fu } << shift;
      if ( ( byte & 0x80u ) == 0u )
        break;
      shift += 7u;
      if ( shift > 35u )
        throw aiger_error( start, "binary delta too large" );
    }
    return value;
  }

private:
  std::string_view data_;
  size_t pos_{0};
};

struct and_def
{
  uint32_t rhs0;
  uint32_t rhs1;
  size_t offset;
};

class aiger_reader
{
public:
  explicit aiger_reader( std::string_view bytes ) : in_( bytes ) {}

  aig run()
  {
    const auto magic_pos = in_.pos();
    const auto magic = in_.word();
    bool binary = false;
    if ( magic == "aig" )
      binary = true;
    else if ( magic != "aag" )
      throw aiger_error( magic_pos, "header must start with 'aag' or 'aig'" );

    max_var_ = read_u32();
    num_inputs_ = read_u32();
    const auto latch_pos = in_.pos();
    const auto num_latches = read_u32();
    num_outputs_ = read_u32();
    num_ands_ = read_u32();
    /* AIGER 1.9 optional B C J F counts */
    while ( !in_.at_line_end() )
    {
      const auto p = in_.pos();
      if ( read_u32() != 0u )
        throw aiger_error( p, "bad-state, constraint, justice and fairness sections are not supported" );
    }
    in_.end_line();

    if ( num_latches != 0u )
      throw aiger_error( latch_pos, "latches are not supported (combinational AIGER only)" );
    if ( uint64_t{ num_inputs_ } + num_ands_ > max_var_ )
      throw aiger_error( magic_pos, "M is smaller than I + L + A" );

    defined_.assign( max_var_ + 1u, kind::undefined );
    defined_[0] = kind::constant;
    input_of_var_.assign( max_var_ + 1u, 0u );
    and_of_var_.assign( max_var_ + 1u, 0u );

    for ( auto i = 0u; i < num_inputs_; ++i )
    {
      uint32_t lit;
      size_t p = in_.pos();
      if ( binary )
        lit = 2u * ( i + 1u );
      else
      {
        lit = read_u32();
        p = in_.pos();
        in_.end_line();
      }
      define_input( lit, p, i );
    }

    std::vector<std::pair<uint32_t, size_t>> outputs;
    for ( auto i = 0u; i < num_outputs_; ++i )
    {
      in_.skip_spaces();
      const auto p = in_.pos();
      const auto lit = read_u32();
      in_.end_line();
      outputs.emplace_back( lit, p );
    }

    for ( auto i = 0u; i < num_ands_; ++i )
    {
      if ( binary )
      {
        const auto p = in_.pos();
        const uint64_t lhs = 2u * ( uint64_t{ num_inputs_ } + i + 1u );
        const auto d0 = in_.varint();
        const auto d1 = in_.varint();
        if ( d0 > lhs || d1 > lhs - d0 )
          throw aiger_error( p, "invalid binary delta encoding" );
        const auto rhs0 = lhs - d0;
        const auto rhs1 = rhs0 - d1;
        define_and( static_cast<uint32_t>( lhs ), static_cast<uint32_t>( rhs0 ), static_cast<uint32_t>( rhs1 ), p );
      }
      else
      {
        in_.skip_spaces();
        const auto p = in_.pos();
        const auto lhs = read_u32();
        const auto rhs0 = read_u32();
        const auto rhs1 = read_u32();
        in_.end_line();
        define_and( lhs, rhs0, rhs1, p );
      }
    }

    /* remaining symbol table and comment lines are ignored */

    return build( outputs );
  }

private:
  enum class kind : uint8_t
  {
    undefined,
    constant,
    input,
    gate
  };

  uint32_t read_u32()
  {
    return static_cast<uint32_t>( in_.number() );
  }

  void check_literal( uint32_t lit, size_t p ) const
  {
    if ( ( lit >> 1u ) > max_var_ )
      throw aiger_error( p, "literal " + std::to_string( lit ) + " exceeds maximum variable index" );
  }

  void define_input( uint32_t lit, size_t p, uint32_t index )
  {
    check_literal( lit, p );
    if ( lit & 1u || lit == 0u )
      throw aiger_error( p, "input literal must be even and non-zero" );
    const auto var = lit >> 1u;
    if ( defined_[var] != kind::undefined )
      throw aiger_error( p, "variable " + std::to_string( var ) + " defined twice" );
    defined_[var] = kind::input;
    input_of_var_[var] = index;
  }

  void define_and( uint32_t lhs, uint32_t rhs0, uint32_t rhs1, size_t p )
  {
    check_literal( lhs, p );
    check_literal( rhs0, p );
    check_literal( rhs1, p );
    if ( lhs & 1u || lhs == 0u )
      throw aiger_error( p, "AND left-hand side must be even and non-zero" );
    const auto var = lhs >> 1u;
    if ( defined_[var] != kind::undefined )
      throw aiger_error( p, "variable " + std::to_string( var ) + " defined twice" );
    defined_[var] = kind::gate;
    and_of_var_[var] = static_cast<uint32_t>( ands_.size() );
    ands_.push_back( { rhs0, rhs1, p } );
    and_vars_.push_back( var );
  }

  aig build( std::vector<std::pair<uint32_t, size_t>> const& outputs )
  {
    node_of_var_.assign( max_var_ + 1u, invalid );
    node_of_var_[0] = 0u;
    for ( uint32_t v = 1u; v <= max_var_; ++v )
      if ( defined_[v] == kind::input )
        node_of_var_[v] = 1u + input_of_var_[v];

    state_.assign( max_var_ + 1u, 0u );
    next_node_ = 1u + num_inputs_;
    for ( auto const v : and_vars_ )
      place_and( v );

    std::vector<std::array<signal, 2>> nodes( sorted_.size() );
    for ( auto i = 0u; i < sorted_.size(); ++i )
    {
      auto const& def = ands_[and_of_var_[sorted_[i]]];
      nodes[i] = { translate( def.rhs0, def.offset ), translate( def.rhs1, def.offset ) };
    }
    std::vector<signal> outs;
    for ( auto const& [lit, p] : outputs )
    {
      check_literal( lit, p );
      outs.push_back( translate( lit, p ) );
    }
    return aig( num_inputs_, std::move( nodes ), std::move( outs ) );
  }

  /* iterative DFS so that deep files do not exhaust the stack */
  void place_and( uint32_t root )
  {
    if ( state_[root] == 2u )
      return;
    std::vector<uint32_t> stack{ root };
    while ( !stack.empty() )
    {
      const auto v = stack.back();
      if ( state_[v] == 2u )
      {
        stack.pop_back();
        continue;
      }
      auto const& def = ands_[and_of_var_[v]];
      if ( state_[v] == 0u )
      {
        state_[v] = 1u;
        for ( auto const lit : { def.rhs1, def.rhs0 } )
        {
          const auto c = lit >> 1u;
          if ( defined_[c] == kind::undefined )
            throw aiger_error( def.offset, "dangling literal " + std::to_string( lit ) );
          if ( defined_[c] == kind::gate )
          {
            if ( state_[c] == 1u )
              throw aiger_error( def.offset, "combinational cycle through variable " + std::to_string( c ) );
            if ( state_[c] == 0u )
              stack.push_back( c );
          }
        }
      }
      else
      {
        state_[v] = 2u;
        node_of_var_[v] = next_node_++;
        sorted_.push_back( v );
        stack.pop_back();
      }
    }
  }

  signal translate( uint32_t lit, size_t p ) const
  {
    const auto var = lit >> 1u;
    if ( defined_[var] == kind::undefined )
      throw aiger_error( p, "dangling literal " + std::to_string( lit ) );
    return signal::make( node_of_var_[var], lit & 1u );
  }

  static constexpr uint32_t invalid = 0xffffffffu;

  cursor in_;
  uint32_t max_var_{0};
  uint32_t num_inputs_{0};
  uint32_t num_outputs_{0};
  uint32_t num_ands_{0};

  std::vector<kind> defined_;
  std::vector<uint32_t> input_of_var_;
  std::vector<uint32_t> and_of_var_;
  std::vector<and_def> ands_;
  std::vector<uint32_t> and_vars_;

  std::vector<uint32_t> node_of_var_;
  std::vector<uint8_t> state_;
  std::vector<uint32_t> sorted_;
  uint32_t next_node_{0};
};

} // namespace

aig read_aiger( std::string_view bytes )
{
  return aiger_reader( bytes ).run();
}

aig read_aiger_file( std::filesystem::path const& path )
{
  std::ifstream in( path, std::ios::binary );
  if ( !in )
    throw std::runtime_error( "cannot open " + path.string() );
  std::ostringstream ss;
  ss << in.rdbuf();
  return read_aiger( ss.str() );
}

std::string write_aiger( aig const& g )
{
  std::ostringstream os;
  os << "aag " << ( g.num_nodes() - 1u ) << ' ' << g.num_pis() << " 0 " << g.num_pos() << ' ' << g.num_ands() << '\n';
  for ( auto i = 0u; i < g.num_pis(); ++i )
    os << 2u * g.pi_node( i ) << '\n';
  for ( auto const& o : g.outputs() )
    os << o.literal << '\n';
  for ( node_id n = g.first_and(); n < g.num_nodes(); ++n )
  {
    auto const& fs = g.fanins( n );
    os << 2u * n << ' ' << fs[0].literal << ' ' << fs[1].literal << '\n';
  }
  return os.str();
}

} // namespace pigmap
