#pragma once

#include "monoflag/multipoly.hpp"

#include <cstdint>
#include <vector>

namespace monoflag {

/// The limiting monotone-triple density of the folded family F_s(x), as an
/// exact polynomial in floor((s-1)/2) variables.
///
/// The folded word is modelled as 2r+1 consecutive segments with length
/// fractions (x_1..x_r, 1 - 2 sum x_i, x_r..x_1). Three sampled positions fall
/// into segments by the multinomial law; a position inside an alternating
/// segment shows either of its two letters with probability 1/2 independently,
/// a position in the constant segment shows its letter.
MultiPoly generate_hs(std::uint32_t s);

struct SimplexMin {
  std::vector<double> point;
  double value = 0;
  /// Norm of the projected-gradient step P(x - grad) - x; zero exactly at KKT points.
  double gradient_norm_at_point = 0;
  /// Coordinates pinned at zero, and whether the sum constraint is tight.
  std::vector<std::size_t> zero_coordinates;
  bool sum_at_bound = false;
};

struct MinimizeOptions {
  /// Grid spacing for seeding; coarsened automatically when the grid would
  /// exceed max_grid_points.
  double grid_step = 0.01;
  std::size_t max_grid_points = 2'000'000;
  std::size_t refined_seeds = 24;
};

/// Global minimum of p over {x >= 0, sum x <= 1/2}: grid seeding, projected
/// gradient descent from the best seeds, then Newton polishing on the active face.
SimplexMin minimize_simplex(const MultiPoly& p, const MinimizeOptions& options = {});

/// Local minimisation from one feasible start; used by minimize_simplex and by
/// stability checks.
SimplexMin minimize_simplex_from(const MultiPoly& p, std::vector<double> start);

/// Euclidean projection onto {x >= 0, sum x <= 1/2}.
std::vector<double> project_to_simplex(std::vector<double> x);

/// q(s) = min over the simplex of h_s, for 3 <= s <= cap.
SimplexMin q_of_s(std::uint32_t s, std::uint32_t cap = 15);

}  // namespace monoflag
