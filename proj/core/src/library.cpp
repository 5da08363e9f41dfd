#include "pigmap/library.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <tuple>

#include "pigmap/npn.hpp"

namespace pigmap
{

double gate::max_delay() const
{
  double d = 0.0;
  for ( auto const v : pin_delays )
    d = std::max( d, v );
  return d;
}

tech_library::tech_library( std::vector<gate> gates ) : gates_( std::move( gates ) )
{
  const truth_table not_function{ 0x1u, 1u };
  bool found = false;
  for ( auto i = 0u; i < gates_.size(); ++i )
  {
    auto const& g = gates_[i];
    if ( g.num_inputs() != 1u || g.function != not_function )
      continue;
    if ( !found || g.area < gates_[inverter_].area || ( g.area == gates_[inverter_].area && g.name < gates_[inverter_].name ) )
      inverter_ = i;
    found = true;
  }
  if ( !found )
    throw std::invalid_argument( "no inverter in library" );

  for ( auto i = 0u; i < gates_.size(); ++i )
  {
    auto const& g = gates_[i];
    if ( g.num_inputs() == 0u || g.num_inputs() > 4u )
      continue;
    npn_index_[npn_canonicalize( g.function ).first].push_back( i );
  }
}

std::vector<match> tech_library::match_cut( truth_table const& tt ) const
{
  std::lock_guard lock( cache_->mutex );
  auto it = cache_->entries.find( tt );
  if ( it == cache_->entries.end() )
    it = cache_->entries.emplace( tt, compute_matches( tt ) ).first;
  return it->second;
}

std::vector<match> tech_library::compute_matches( truth_table const& tt ) const
{
  std::vector<match> res;
  const auto [fn, support] = shrink_to_support( tt );
  if ( fn.num_vars == 0u || fn.num_vars > 4u )
    return res;

  const auto it = npn_index_.find( npn_canonicalize( fn ).first );
  if ( it == npn_index_.end() )
    return res;

  using key_t = std::tuple<uint32_t, bool, std::vector<std::tuple<uint32_t, bool, double>>>;
  std::map<key_t, match> unique;
  for ( auto const index : it->second )
  {
    auto const& g = gates_[index];
    if ( g.num_inputs() != fn.num_vars )
      continue;
    for ( auto const& t : npn_matches( g.function, fn ) )
    {
      match m;
      m.gate = index;
      m.input_neg = t.input_neg;
      m.output_negated = t.output_neg;
      std::vector<std::tuple<uint32_t, bool, double>> pins;
      for ( auto i = 0u; i < g.num_inputs(); ++i )
      {
        m.leaf_of_pin[i] = static_cast<uint8_t>( support[t.perm[i]] );
        pins.emplace_back( m.leaf_of_pin[i], m.input_negated( i ), g.pin_delays[i] );
      }
      std::sort( pins.begin(), pins.end() );
      unique.emplace( key_t{ index, m.output_negated, std::move( pins ) }, m );
    }
  }

  for ( auto const& [key, m] : unique )
    res.push_back( m );
  std::stable_sort( res.begin(), res.end(), [this]( match const& a, match const& b ) {
    auto const& ga = gates_[a.gate];
    auto const& gb = gates_[b.gate];
    if ( ga.area != gb.area )
      return ga.area < gb.area;
    return ga.name < gb.name;
  } );
  return res;
}

namespace
{

struct expr_node
{
  enum class op : uint8_t
  {
    var,
    constant,
    negate,
    conj,
    disj
  } kind;
  uint32_t a{0};
  uint32_t b{0};
};

class expr_parser
{
public:
  expr_parser( std::string_view text, uint32_t line ) : text_( text ), line_( line ) {}

  uint32_t parse()
  {
    const auto root = parse_or();
    skip_spaces();
    if ( pos_ != text_.size() )
      fail( std::string( "unexpected '" ) + text_[pos_] + "' in expression" );
    return root;
  }

  std::vector<expr_node> const& nodes() const { return nodes_; }
  std::vector<std::string> const& variables() const { return vars_; }

private:
  [[noreturn]] void fail( std::string const& msg ) const { throw genlib_error( line_, msg ); }

  void skip_spaces()
  {
    while ( pos_ < text_.size() && std::isspace( static_cast<unsigned char>( text_[pos_] ) ) )
      ++pos_;
  }

  char peek()
  {
    skip_spaces();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  static bool is_ident_char( char c )
  {
    return std::isalnum( static_cast<unsigned char>( c ) ) || c == '_' || c == '[' || c == ']' || c == '.';
  }

  uint32_t add( expr_node n )
  {
    nodes_.push_back( n );
    return static_cast<uint32_t>( nodes_.size() - 1u );
  }

  uint32_t parse_or()
  {
    auto lhs = parse_and();
    while ( peek() == '+' || peek() == '|' )
    {
      ++pos_;
      lhs = add( { expr_node::op::disj, lhs, parse_and() } );
    }
    return lhs;
  }

  uint32_t parse_and()
  {
    auto lhs = parse_unary();
    while ( true )
    {
      const auto c = peek();
      if ( c == '*' || c == '&' )
      {
        ++pos_;
        lhs = add( { expr_node::op::conj, lhs, parse_unary() } );
      }
      else if ( c == '!' || c == '(' || is_ident_char( c ) )
        lhs = add( { expr_node::op::conj, lhs, parse_unary() } );
      else
        return lhs;
    }
  }

  uint32_t parse_unary()
  {
    if ( peek() == '!' )
    {
      ++pos_;
      return add( { expr_node::op::negate, parse_unary() } );
    }
    auto n = parse_primary();
    while ( peek() == '\'' )
    {
      ++pos_;
      n = add( { expr_node::op::negate, n } );
    }
    return n;
  }

  uint32_t parse_primary()
  {
    const auto c = peek();
    if ( c == '(' )
    {
      ++pos_;
      const auto n = parse_or();
      if ( peek() != ')' )
        fail( "missing ')' in expression" );
      ++pos_;
      return n;
    }
    if ( !is_ident_char( c ) )
      fail( c == '\0' ? std::string( "unexpected end of expression" ) : std::string( "unexpected '" ) + c + "' in expression" );

    const auto start = pos_;
    while ( pos_ < text_.size() && is_ident_char( text_[pos_] ) )
      ++pos_;
    const std::string name( text_.substr( start, pos_ - start ) );
    if ( name == "CONST0" )
      return add( { expr_node::op::constant, 0u } );
    if ( name == "CONST1" )
      return add( { expr_node::op::constant, 1u } );

    auto it = std::find( vars_.begin(), vars_.end(), name );
    if ( it == vars_.end() )
    {
      vars_.push_back( name );
      it = vars_.end() - 1;
    }
    return add( { expr_node::op::var, static_cast<uint32_t>( it - vars_.begin() ) } );
  }

  std::string_view text_;
  uint32_t line_;
  size_t pos_{0};
  std::vector<expr_node> nodes_;
  std::vector<std::string> vars_;
};

bool evaluate( std::vector<expr_node> const& nodes, uint32_t root, std::vector<uint32_t> const& var_to_pin, uint32_t minterm )
{
  std::vector<bool> value( nodes.size() );
  for ( auto i = 0u; i <= root; ++i )
  {
    auto const& n = nodes[i];
    switch ( n.kind )
    {
    case expr_node::op::var:
      value[i] = ( minterm >> var_to_pin[n.a] ) & 1u;
      break;
    case expr_node::op::constant:
      value[i] = n.a != 0u;
      break;
    case expr_node::op::negate:
      value[i] = !value[n.a];
      break;
    case expr_node::op::conj:
      value[i] = value[n.a] && value[n.b];
      break;
    case expr_node::op::disj:
      value[i] = value[n.a] || value[n.b];
      break;
    }
  }
  return value[root];
}

struct pin_record
{
  std::string name;
  double delay;
};

class genlib_reader
{
public:
  genlib_reader( std::string_view text, std::vector<std::string>* warnings ) : text_( text ), warnings_( warnings ) {}

  tech_library run()
  {
    std::vector<gate> gates;
    while ( true )
    {
      skip_blank();
      if ( at_end() )
        break;
      const auto keyword_line = line_;
      const auto keyword = word();
      if ( keyword != "GATE" )
        throw genlib_error( keyword_line, "expected GATE, found '" + std::string( keyword ) + "'" );
      if ( auto g = read_gate() )
        gates.push_back( std::move( *g ) );
    }
    return tech_library( std::move( gates ) );
  }

private:
  bool at_end() const { return pos_ >= text_.size(); }

  void skip_blank()
  {
    while ( !at_end() )
    {
      const auto c = text_[pos_];
      if ( c == '#' )
      {
        while ( !at_end() && text_[pos_] != '\n' )
          ++pos_;
      }
      else if ( std::isspace( static_cast<unsigned char>( c ) ) )
      {
        if ( c == '\n' )
          ++line_;
        ++pos_;
      }
      else
        break;
    }
  }

  std::string_view word()
  {
    skip_blank();
    const auto start = pos_;
    while ( !at_end() && !std::isspace( static_cast<unsigned char>( text_[pos_] ) ) && text_[pos_] != '#' )
      ++pos_;
    return text_.substr( start, pos_ - start );
  }

  std::string_view peek_word()
  {
    const auto saved_pos = pos_;
    const auto saved_line = line_;
    const auto w = word();
    pos_ = saved_pos;
    line_ = saved_line;
    return w;
  }

  double number( char const* what )
  {
    const auto l = line_;
    const auto w = word();
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars( w.data(), w.data() + w.size(), value );
    if ( w.empty() || ec != std::errc() || ptr != w.data() + w.size() )
      throw genlib_error( l, std::string( "expected number for " ) + what + ", found '" + std::string( w ) + "'" );
    return value;
  }

  std::optional<gate> read_gate()
  {
    const auto gate_line = line_;
    gate g;
    g.name = std::string( word() );
    if ( g.name.empty() )
      throw genlib_error( gate_line, "missing gate name" );
    g.area = number( "area" );
    if ( g.area < 0.0 )
      throw genlib_error( gate_line, "negative area for gate " + g.name );

    skip_blank();
    const auto expr_line = line_;
    const auto start = pos_;
    while ( !at_end() && text_[pos_] != ';' )
    {
      if ( text_[pos_] == '\n' )
        ++line_;
      ++pos_;
    }
    if ( at_end() )
      throw genlib_error( expr_line, "missing ';' after expression of gate " + g.name );
    const auto assignment = text_.substr( start, pos_ - start );
    ++pos_;

    const auto eq = assignment.find( '=' );
    if ( eq == std::string_view::npos )
      throw genlib_error( expr_line, "missing '=' in gate " + g.name );
    auto out = assignment.substr( 0, eq );
    while ( !out.empty() && std::isspace( static_cast<unsigned char>( out.back() ) ) )
      out.remove_suffix( 1 );
    if ( out.empty() )
      throw genlib_error( expr_line, "missing output name in gate " + g.name );
    g.output_name = std::string( out );

    expr_parser parser( assignment.substr( eq + 1u ), expr_line );
    const auto root = parser.parse();

    std::vector<pin_record> pins;
    bool wildcard = false;
    double wildcard_delay = 0.0;
    while ( peek_word() == "PIN" )
    {
      word();
      const auto pin_line = line_;
      const auto name = std::string( word() );
      const auto phase = word();
      if ( phase != "INV" && phase != "NONINV" && phase != "UNKNOWN" )
        throw genlib_error( pin_line, "invalid pin phase '" + std::string( phase ) + "'" );
      number( "input load" );
      number( "max load" );
      const auto rise = number( "rise delay" );
      number( "rise slope" );
      const auto fall = number( "fall delay" );
      number( "fall slope" );
      const auto delay = std::max( rise, fall );
      if ( delay < 0.0 )
        throw genlib_error( pin_line, "negative pin delay in gate " + g.name );
      if ( name == "*" )
      {
        wildcard = true;
        wildcard_delay = delay;
      }
      else
        pins.push_back( { name, delay } );
    }

    auto const& vars = parser.variables();
    if ( wildcard )
    {
      pins.clear();
      for ( auto const& v : vars )
        pins.push_back( { v, wildcard_delay } );
    }
    std::vector<uint32_t> var_to_pin( vars.size() );
    for ( auto i = 0u; i < vars.size(); ++i )
    {
      const auto it = std::find_if( pins.begin(), pins.end(), [&]( auto const& p ) { return p.name == vars[i]; } );
      if ( it == pins.end() )
        throw genlib_error( gate_line, "no PIN record for input '" + vars[i] + "' of gate " + g.name );
      var_to_pin[i] = static_cast<uint32_t>( it - pins.begin() );
    }

    if ( pins.size() > 4u )
    {
      if ( warnings_ )
        warnings_->push_back( "skipping gate " + g.name + " with " + std::to_string( pins.size() ) + " inputs (at most 4 supported)" );
      return std::nullopt;
    }

    for ( auto const& p : pins )
    {
      g.pin_names.push_back( p.name );
      g.pin_delays.push_back( p.delay );
    }
    g.function = truth_table{ 0u, static_cast<uint32_t>( pins.size() ) };
    for ( auto m = 0u; m < g.function.num_bits(); ++m )
      if ( evaluate( parser.nodes(), root, var_to_pin, m ) )
        g.function.bits |= uint64_t{1} << m;
    return g;
  }

  std::string_view text_;
  std::vector<std::string>* warnings_;
  size_t pos_{0};
  uint32_t line_{1};
};

} // namespace

tech_library parse_genlib( std::string_view text, std::vector<std::string>* warnings )
{
  return genlib_reader( text, warnings ).run();
}

tech_library read_genlib_file( std::filesystem::path const& path, std::vector<std::string>* warnings )
{
  std::ifstream in( path );
  if ( !in )
    throw std::runtime_error( "cannot open " + path.string() );
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_genlib( ss.str(), warnings );
}

} // namespace pigmap
