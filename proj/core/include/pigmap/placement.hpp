#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "aig.hpp"

namespace pigmap
{

struct point
{
  double x{0};
  double y{0};

  bool operator==( point const& ) const = default;
};

inline double manhattan( point const& a, point const& b )
{
  const auto dx = a.x - b.x;
  const auto dy = a.y - b.y;
  return ( dx < 0 ? -dx : dx ) + ( dy < 0 ? -dy : dy );
}

struct place_params
{
  /*! \brief Region side per square root of the AND count. */
  double spacing{1.0};
  uint64_t seed{0};
  /*! \brief Standard deviation of the initial jitter, relative to the side. */
  double jitter{0.1};
  /*! \brief Convergence threshold on the largest move, relative to the side. */
  double tolerance{1e-6};
  uint32_t max_iterations{1000};
};

/*! \brief Square core region with fixed I/O terminals on its boundary.
 *
 * The constant node is never placed: edges from it carry no wire.
 */
struct region
{
  double side{1};
  /*! \brief Entry `i` is the terminal of PI `i`. */
  std::vector<point> pi_positions;
  /*! \brief Entry `j` is the terminal of PO `j`. */
  std::vector<point> po_positions;

  bool contains( point const& p ) const { return p.x >= 0 && p.y >= 0 && p.x <= side && p.y <= side; }
};

/*! \brief Side `max( 1, ceil( sqrt( size ) * spacing ) )`.
 *
 * PIs are spread evenly along the path running down the left edge and
 * then along the bottom edge; POs along the top edge and then down the
 * right edge. Terminal `i` of `n` sits at arc length `(i + 0.5) / n` of
 * its path.
 */
region floorplan( aig const& g, place_params const& ps );

struct placement
{
  region core;
  /*! \brief Position per node id; the constant node sits at the origin. */
  std::vector<point> positions;
  bool converged{false};
  uint32_t iterations{0};
  /*! \brief Quadratic objective before the first and after every sweep. */
  std::vector<double> objective_trace;
};

/*! \brief Quadratic placement by Gauss-Seidel relaxation.
 *
 * AND nodes start at the center plus seeded Gaussian jitter and are
 * swept in index order, each moving to the mean of its neighbours
 * (fanins, AND fanouts and PO terminals, counted with multiplicity).
 * Stops when no node moves farther than the tolerance or after
 * `max_iterations` sweeps.
 */
placement place( aig const& g, region const& r, place_params const& ps );

/*! \brief Same as `place` but starting from the given AND positions
 * (entry `i` belongs to node `first_and() + i`). */
placement place_from( aig const& g, region const& r, std::vector<point> const& initial, place_params const& ps );

/*! \brief Jittered start positions for the AND nodes. */
std::vector<point> initial_positions( aig const& g, region const& r, place_params const& ps );

/*! \brief Sum of squared Euclidean edge lengths over AND fanin edges and PO edges. */
double quadratic_objective( aig const& g, region const& r, std::span<const point> positions );

/*! \brief Half-perimeter of the bounding box of a net. */
double net_hpwl( std::span<const point> pins );

/*! \brief Sum of `net_hpwl` over all nets (driver, AND fanouts, PO terminals). */
double hpwl( aig const& g, placement const& pl );

std::string placement_to_svg( aig const& g, placement const& pl );

} // namespace pigmap
