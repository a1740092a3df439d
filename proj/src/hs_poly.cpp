#include "monoflag/hs_poly.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace monoflag {

namespace {

struct Segment {
  MultiPoly fraction;
  std::vector<std::pair<std::uint32_t, Rational>> letters;  // letter, probability
};

std::vector<Segment> folded_segments(std::uint32_t s) {
  const std::size_t r = (s - 1) / 2;
  const bool odd = s % 2 == 1;
  const std::uint32_t mid = (s - 1) / 2;
  const Rational half(1, 2);
  std::vector<Segment> side;
  for (std::size_t i = 1; i <= r; ++i) {
    Segment seg{MultiPoly::variable(r, i - 1), {}};
    if (odd && i == 1) {
      seg.letters = {{mid, Rational(1)}};
    } else if (odd) {
      seg.letters = {{mid - static_cast<std::uint32_t>(i - 1), half}, {mid + static_cast<std::uint32_t>(i - 1), half}};
    } else {
      seg.letters = {{static_cast<std::uint32_t>(s / 2 - i), half},
                     {static_cast<std::uint32_t>(s / 2 - 1 + i), half}};
    }
    side.push_back(std::move(seg));
  }
  MultiPoly centre = MultiPoly::constant(r, Rational(1));
  for (std::size_t i = 0; i < r; ++i) centre -= MultiPoly::variable(r, i) * Rational(2);
  std::vector<Segment> segments(side);
  segments.push_back({centre, {{0, half}, {s - 1, half}}});
  for (std::size_t i = side.size(); i-- > 0;) segments.push_back(side[i]);
  return segments;
}

bool monotone3(std::uint32_t a, std::uint32_t b, std::uint32_t c) {
  return (a <= b && b <= c) || (a >= b && b >= c);
}

}  // namespace

MultiPoly generate_hs(std::uint32_t s) {
  if (s < 3) throw std::invalid_argument("h_s is defined for s >= 3");
  const auto segments = folded_segments(s);
  const std::size_t r = (s - 1) / 2;
  MultiPoly h(r);
  const std::size_t g = segments.size();
  for (std::size_t a = 0; a < g; ++a)
    for (std::size_t b = a; b < g; ++b)
      for (std::size_t c = b; c < g; ++c) {
        // ordered position triple lands in segments a <= b <= c
        Rational orderings(6);
        if (a == b && b == c) orderings = 1;
        else if (a == b || b == c) orderings = 3;
        Rational monotone;
        for (const auto& [la, pa] : segments[a].letters)
          for (const auto& [lb, pb] : segments[b].letters)
            for (const auto& [lc, pc] : segments[c].letters)
              if (monotone3(la, lb, lc)) monotone += pa * pb * pc;
        if (monotone == 0) continue;
        h += segments[a].fraction * segments[b].fraction * segments[c].fraction * (orderings * monotone);
      }
  return h;
}

std::vector<double> project_to_simplex(std::vector<double> x) {
  std::vector<double> clamped(x);
  for (double& v : clamped) v = std::max(v, 0.0);
  if (std::accumulate(clamped.begin(), clamped.end(), 0.0) <= 0.5) return clamped;
  // projection onto {x >= 0, sum x = 1/2}
  std::vector<double> sorted(x);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0, tau = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    cumulative += sorted[i];
    double t = (cumulative - 0.5) / static_cast<double>(i + 1);
    if (sorted[i] - t > 0) tau = t;
  }
  for (double& v : x) v = std::max(v - tau, 0.0);
  return x;
}

namespace {

double projected_gradient_norm(const CompiledPoly& f, const std::vector<double>& x) {
  std::vector<double> g(x.size());
  f.gradient(x, g);
  std::vector<double> step(x);
  for (std::size_t i = 0; i < x.size(); ++i) step[i] -= g[i];
  step = project_to_simplex(std::move(step));
  double sq = 0;
  for (std::size_t i = 0; i < x.size(); ++i) sq += (step[i] - x[i]) * (step[i] - x[i]);
  return std::sqrt(sq);
}

constexpr double kActiveTol = 1e-10;

void fill_active(SimplexMin& out) {
  out.zero_coordinates.clear();
  double sum = 0;
  for (std::size_t i = 0; i < out.point.size(); ++i) {
    if (out.point[i] <= kActiveTol) out.zero_coordinates.push_back(i);
    sum += out.point[i];
  }
  out.sum_at_bound = sum >= 0.5 - kActiveTol;
}

std::vector<double> projected_descent(const CompiledPoly& f, std::vector<double> x) {
  const std::size_t n = x.size();
  std::vector<double> g(n), trial(n);
  double step = 1.0;
  double fx = f.value(x);
  for (int iter = 0; iter < 20000; ++iter) {
    f.gradient(x, g);
    bool accepted = false;
    for (int back = 0; back < 60; ++back) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = x[i] - step * g[i];
      trial = project_to_simplex(std::move(trial));
      double moved = 0;
      for (std::size_t i = 0; i < n; ++i) moved += (trial[i] - x[i]) * (trial[i] - x[i]);
      double ft = f.value(trial);
      if (ft <= fx - 1e-4 * moved / step) {
        accepted = moved > 0;
        if (moved < 1e-30) return x;
        x = trial;
        fx = ft;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    if (projected_gradient_norm(f, x) < 1e-13) break;
    step = std::min(1.0, step * 2);
  }
  return x;
}

// Newton iterations restricted to the face fixed by the current active set.
std::vector<double> polish_on_face(const CompiledPoly& f, std::vector<double> x) {
  const std::size_t n = x.size();
  std::vector<std::size_t> free;
  double sum = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sum += x[i];
    if (x[i] > kActiveTol) free.push_back(i);
    else x[i] = 0;
  }
  const bool on_sum = sum >= 0.5 - kActiveTol;
  const std::size_t m = free.size();
  if (m == 0) return x;
  std::vector<double> g(n), h(n * n);
  for (int iter = 0; iter < 50; ++iter) {
    f.gradient(x, g);
    f.hessian(x, h);
    const std::size_t dim = m + (on_sum ? 1 : 0);
    Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(static_cast<long>(dim), static_cast<long>(dim));
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<long>(dim));
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = 0; b < m; ++b) kkt(static_cast<long>(a), static_cast<long>(b)) = h[free[a] * n + free[b]];
      rhs(static_cast<long>(a)) = -g[free[a]];
      if (on_sum) {
        kkt(static_cast<long>(a), static_cast<long>(m)) = 1;
        kkt(static_cast<long>(m), static_cast<long>(a)) = 1;
      }
    }
    if (on_sum) {
      double s = 0;
      for (std::size_t i : free) s += x[i];
      rhs(static_cast<long>(m)) = 0.5 - s;
    }
    Eigen::VectorXd delta = kkt.fullPivLu().solve(rhs);
    if (!delta.allFinite()) break;
    double norm = 0;
    std::vector<double> next(x);
    for (std::size_t a = 0; a < m; ++a) {
      next[free[a]] += delta(static_cast<long>(a));
      norm += delta(static_cast<long>(a)) * delta(static_cast<long>(a));
      if (next[free[a]] < 0) return x;
    }
    if (std::accumulate(next.begin(), next.end(), 0.0) > 0.5 + 1e-15) return x;
    x = std::move(next);
    if (std::sqrt(norm) < 1e-15) break;
  }
  return x;
}

}  // namespace

SimplexMin minimize_simplex_from(const MultiPoly& p, std::vector<double> start) {
  if (start.size() != p.variables()) throw std::invalid_argument("seed arity mismatch");
  CompiledPoly f(p);
  std::vector<double> x = projected_descent(f, project_to_simplex(std::move(start)));
  std::vector<double> polished = polish_on_face(f, x);
  if (f.value(polished) <= f.value(x) + 1e-15 && projected_gradient_norm(f, polished) <= projected_gradient_norm(f, x))
    x = std::move(polished);
  SimplexMin out;
  out.point = x;
  out.value = f.value(x);
  out.gradient_norm_at_point = projected_gradient_norm(f, x);
  fill_active(out);
  return out;
}

SimplexMin minimize_simplex(const MultiPoly& p, const MinimizeOptions& options) {
  const std::size_t r = p.variables();
  if (r > 8) throw std::invalid_argument("minimize_simplex supports at most 8 variables");
  if (r == 0) {
    SimplexMin out;
    out.value = p.evaluate(std::span<const double>{});
    return out;
  }
  CompiledPoly f(p);

  // grid resolution: units per 1/2, shrunk until the grid is small enough
  auto grid_size = [r](unsigned units) {
    double count = 1;
    for (std::size_t i = 1; i <= r; ++i) count = count * static_cast<double>(units + i) / static_cast<double>(i);
    return count;
  };
  unsigned units = static_cast<unsigned>(std::lround(0.5 / options.grid_step));
  for (unsigned candidate : {units, 25u, 20u, 10u, 5u, 4u, 2u, 1u}) {
    units = candidate;
    if (candidate <= std::lround(0.5 / options.grid_step) &&
        grid_size(candidate) <= static_cast<double>(options.max_grid_points))
      break;
  }
  const double step = 0.5 / units;

  using Seed = std::pair<double, std::vector<double>>;
  std::vector<Seed> best;  // bounded max-heap by value
  auto cmp = [](const Seed& a, const Seed& b) { return a.first < b.first || (a.first == b.first && a.second < b.second); };
  std::vector<unsigned> idx(r, 0);
  std::vector<double> pt(r);
  auto visit = [&](auto&& self, std::size_t dim, unsigned remaining) -> void {
    if (dim == r) {
      for (std::size_t i = 0; i < r; ++i) pt[i] = idx[i] * step;
      double v = f.value(pt);
      if (best.size() < options.refined_seeds || cmp(Seed{v, pt}, best.front())) {
        best.emplace_back(v, pt);
        std::push_heap(best.begin(), best.end(), cmp);
        if (best.size() > options.refined_seeds) {
          std::pop_heap(best.begin(), best.end(), cmp);
          best.pop_back();
        }
      }
      return;
    }
    for (unsigned u = 0; u <= remaining; ++u) {
      idx[dim] = u;
      self(self, dim + 1, remaining - u);
    }
  };
  visit(visit, 0, units);

  std::sort(best.begin(), best.end(), cmp);
  SimplexMin winner;
  bool have = false;
  for (auto& [v, seed] : best) {
    SimplexMin local = minimize_simplex_from(p, seed);
    if (!have || local.value < winner.value ||
        (local.value == winner.value && local.point < winner.point)) {
      winner = std::move(local);
      have = true;
    }
  }
  return winner;
}

SimplexMin q_of_s(std::uint32_t s, std::uint32_t cap) {
  if (s < 3) throw std::invalid_argument("q(s) is defined for s >= 3");
  if (s > cap) throw std::invalid_argument("q(s) capped at s = " + std::to_string(cap));
  return minimize_simplex(generate_hs(s));
}

}  // namespace monoflag
