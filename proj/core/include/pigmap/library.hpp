#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "truth_table.hpp"

namespace pigmap
{

/*! \brief Single-output library cell with at most 4 inputs. */
struct gate
{
  std::string name;
  double area{0};
  std::string output_name;
  std::vector<std::string> pin_names;
  /*! \brief Per-pin delay, `max( rise, fall )`. */
  std::vector<double> pin_delays;
  /*! \brief Function over the pins, pin `i` is variable `i`. */
  truth_table function;

  uint32_t num_inputs() const { return static_cast<uint32_t>( pin_names.size() ); }
  double max_delay() const;
};

/*! \brief A way to implement a cut function with one cell.
 *
 * Pin `i` of the cell is driven by cut leaf `leaf_of_pin[i]` (an index
 * into the cut's sorted leaves), complemented if bit `i` of `input_neg`
 * is set. The cell output equals the cut function, or its complement if
 * `output_negated` is set.
 */
struct match
{
  uint32_t gate{0};
  std::array<uint8_t, 4> leaf_of_pin{};
  uint8_t input_neg{0};
  bool output_negated{false};

  bool input_negated( uint32_t pin ) const { return ( input_neg >> pin ) & 1u; }
  bool operator==( match const& ) const = default;
};

class genlib_error : public std::runtime_error
{
public:
  genlib_error( uint32_t line, std::string const& what )
      : std::runtime_error( "genlib error at line " + std::to_string( line ) + ": " + what ), line_( line ) {}

  uint32_t line() const { return line_; }

private:
  uint32_t line_;
};

class tech_library
{
public:
  /*! \brief Throws if no gate computes NOT. */
  explicit tech_library( std::vector<gate> gates );

  std::vector<gate> const& gates() const { return gates_; }
  gate const& operator[]( uint32_t index ) const { return gates_[index]; }

  /*! \brief The minimum-area NOT gate (ties broken by name). */
  uint32_t inverter_index() const { return inverter_; }
  gate const& inverter() const { return gates_[inverter_]; }

  /*! \brief All cells implementing `tt` or its complement.
   *
   * Variables the function does not depend on are dropped first, so
   * leaf indices in the returned matches refer to `tt`'s variables.
   * Matches that only differ by symmetric pin assignments with equal
   * pin delays are reported once. Sorted by area, then name.
   * Functions with more than 4 support variables, and constants, yield
   * no matches. Results are memoized per function.
   */
  std::vector<match> match_cut( truth_table const& tt ) const;

private:
  std::vector<match> compute_matches( truth_table const& tt ) const;

  struct match_cache
  {
    std::mutex mutex;
    std::unordered_map<truth_table, std::vector<match>> entries;
  };

  std::vector<gate> gates_;
  uint32_t inverter_{0};
  std::unordered_map<truth_table, std::vector<uint32_t>> npn_index_;
  std::shared_ptr<match_cache> cache_ = std::make_shared<match_cache>();
};

/*! \brief Parses the genlib subset
 * `GATE <name> <area> <out>=<expr>; PIN <name|*> <phase> <load> <max_load>
 * <rise_delay> <rise_slope> <fall_delay> <fall_slope>`.
 *
 * Expressions use `!`, postfix `'`, `*`/`&`, `+`/`|`, parentheses and
 * `CONST0`/`CONST1`. Gates with more than 4 inputs are skipped; a
 * message is appended to `warnings` when given.
 */
tech_library parse_genlib( std::string_view text, std::vector<std::string>* warnings = nullptr );

tech_library read_genlib_file( std::filesystem::path const& path, std::vector<std::string>* warnings = nullptr );

} // namespace pigmap
