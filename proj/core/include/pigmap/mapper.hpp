#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "aig.hpp"
#include "cuts.hpp"
#include "library.hpp"
#include "netlist.hpp"
#include "placement.hpp"

namespace pigmap
{

enum class strategy : uint8_t
{
  delay_only,
  performance,
  power
};

std::string_view to_string( strategy s );
/*! \brief Accepts `delay`, `performance` and `power`. */
std::optional<strategy> parse_strategy( std::string_view name );

struct mapper_params
{
  /*! \brief Weight of normalized arrival against normalized critical
   * wirelength in Performance mode. */
  double wl_weight{0.5};
  /*! \brief Use individual pin delays instead of the worst pin delay. */
  bool per_pin_delay{false};
  uint32_t wl_iterations{2};
  uint32_t detail_iterations{2};
};

class mapping_error : public std::runtime_error
{
public:
  explicit mapping_error( node_id n )
      : std::runtime_error( "no library match for any cut of node " + std::to_string( n ) ), node_( n ) {}

  node_id node() const { return node_; }

private:
  node_id node_;
};

enum class choice_kind : uint8_t
{
  none,
  /*! \brief Positive phase of a PI. */
  pi,
  /*! \brief The constant node. */
  constant,
  /*! \brief Cut function is constant; the net is tied off. */
  tie,
  /*! \brief A library cell over a cut. */
  gate,
  /*! \brief The library inverter driven by the other phase. */
  inverter
};

struct phase_choice
{
  choice_kind kind{choice_kind::none};
  uint32_t cut{0};
  match m;
};

/*! \brief Implementation of one phase of a node and its costs. */
struct phase_state
{
  phase_choice choice;
  double arrival{0};
  double area_flow{0};
  /*! \brief Worst wirelength of any path ending here. */
  double mw{0};
  /*! \brief Fanout-discounted wirelength of the cone. */
  double tw{0};
  point position;
  double required{std::numeric_limits<double>::infinity()};
  double est_fanouts{1};
};

struct mapping_metrics
{
  double delay{0};
  double area{0};
  double critical_wl{0};
  double total_wl{0};
};

struct mapping_constraints
{
  std::optional<double> global_time;
  std::optional<double> global_wl;
  std::optional<double> critical_wl;
};

struct pass_record
{
  std::string pass;
  uint32_t iteration{0};
  mapping_metrics metrics;
  /*! \brief False if the pass result was discarded. */
  bool accepted{true};
};

/*! \brief Cut-based mapper with delay, area and virtual wirelength passes.
 *
 * Both phases of every node are mapped. A phase is either a library
 * cell over one of the node's cuts or the library inverter driven by
 * the other phase. The placement provides pin positions; a cell sits at
 * the mean position of its cut's pins.
 *
 * After every pass the fanout estimates are refreshed from the cover
 * and all values are recomputed, so `metrics()` is exact for the
 * current cover.
 */
class mapper
{
public:
  mapper( aig const& g, cut_set const& cuts, tech_library const& lib, placement const& pl, mapper_params const& ps = {} );

  /*! \brief Minimum arrival per node and phase; sets the timing constraint. */
  void delay_map();
  /*! \brief Area flow recovery under the timing constraint; tightens it
   * to the resulting worst arrival. */
  void global_area_map();
  /*! \brief Wirelength-driven iterations under the timing constraint,
   * run from the current cover and from the delay-oriented cover; the
   * result with the lower target wirelength is kept. Sets the critical
   * (Performance) or total (Power) wirelength constraint. */
  void wirelength_map( strategy s );
  /*! \brief Exact local area recovery under all active constraints. */
  void detail_area_map();

  netlist gen_netlist() const;

  mapping_metrics metrics() const;
  mapping_constraints const& constraints() const { return constraints_; }
  std::vector<pass_record> const& trace() const { return trace_; }

  phase_state const& state( node_id n, bool phase ) const { return states_[n][phase ? 1 : 0]; }
  /*! \brief Number of cover references per node and phase. */
  std::vector<std::array<uint32_t, 2>> const& cover_refs() const { return refs_; }
  /*! \brief Position of a cell mapped onto cut `c` of node `n`. */
  point cut_position( node_id n, uint32_t c ) const { return cut_positions_[n][c]; }
  std::span<const match> cut_matches( node_id n, uint32_t c ) const { return *cut_matches_[n][c]; }
  double pin_delay( phase_choice const& ch, uint32_t pin ) const;

private:
  enum class objective : uint8_t
  {
    delay,
    area,
    performance,
    power
  };

  struct candidate
  {
    phase_choice choice;
    phase_state values;
    uint32_t cut_size{0};
  };

  struct wl_budget
  {
    point position;
    double limit;
    bool colocated;
  };

  void map_pass( objective obj, bool constrained );
  void map_node( node_id n, objective obj, bool constrained );
  void detail_pass();
  void run_wirelength_iterations( strategy s, uint32_t first_iteration );

  void init_fixed_states();
  candidate evaluate_gate( node_id n, uint32_t c, match const& m ) const;
  candidate evaluate_tie( node_id n, uint32_t c, bool value ) const;
  candidate evaluate_inverter( node_id n, phase_state const& other, double other_est ) const;
  void recompute_node( node_id n );
  bool feasible( node_id n, uint32_t p, candidate const& c ) const;
  bool better( candidate const& a, candidate const& b, objective obj ) const;

  void compute_cover();
  void refresh_estimates();
  void compute_required( double limit );
  void compute_wl_budgets( double limit );
  void finalize();

  struct cone_cost
  {
    double area;
    double wire;
  };

  /*! \brief Area and wire of a phase plus every phase whose reference
   * count flips from or to zero. */
  cone_cost ref_cone( node_id n, uint32_t p );
  cone_cost deref_cone( node_id n, uint32_t p );
  template<bool Ref>
  cone_cost walk_cone( node_id n, uint32_t p );
  double input_wire( node_id n, uint32_t p ) const;
  double choice_area( phase_choice const& ch ) const;

  void record( std::string pass, uint32_t iteration, bool accepted );

  aig const& g_;
  cut_set const& cuts_;
  tech_library const& lib_;
  placement const& pl_;
  mapper_params ps_;

  std::unordered_map<truth_table, std::vector<match>> match_cache_;
  std::vector<std::vector<std::vector<match> const*>> cut_matches_;
  std::vector<std::vector<point>> cut_positions_;
  std::vector<std::vector<int8_t>> cut_constant_;

  std::vector<std::array<phase_state, 2>> states_;
  /*! \brief Cover produced by `delay_map`. */
  std::vector<std::array<phase_state, 2>> delay_states_;
  std::vector<std::array<uint32_t, 2>> refs_;
  std::vector<std::array<std::vector<wl_budget>, 2>> budgets_;
  bool use_budgets_{false};

  mapping_constraints constraints_;
  std::vector<pass_record> trace_;

  double inv_delay_{0};
  double inv_area_{0};
  double score_time_{1};
  double score_wl_{1};
  double required_tol_{0};
};

} // namespace pigmap
