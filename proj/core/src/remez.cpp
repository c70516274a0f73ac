#include "ineqcert/remez.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <utility>

namespace ineqcert {
namespace {

// Memoizes g on exact abscissae; the search grid is reused across iterations.
class Sampler {
 public:
  explicit Sampler(const RealFunction& g) : g_(g) {}

  const Real& operator()(const Real& x) {
    auto it = cache_.find(x);
    if (it != cache_.end()) return it->second;
    ++evaluations_;
    return cache_.emplace(x, g_(x)).first->second;
  }

  long evaluations() const noexcept { return evaluations_; }

 private:
  const RealFunction& g_;
  std::map<Real, Real> cache_;
  long evaluations_ = 0;
};

int sign_of(const Real& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

// Chebyshev extremum points of [a, b], increasing, endpoints and the centre exact.
std::vector<Real> chebyshev_extrema(const Real& a, const Real& b, int count) {
  std::vector<Real> points(static_cast<std::size_t>(count));
  const Real pi = pi_constant();
  const Real mid = (a + b) / 2;
  const Real half = (b - a) / 2;
  const int intervals = count - 1;
  for (int j = 0; j < count; ++j) {
    const int numerator = 2 * j - intervals;
    Real x;
    if (j == 0) {
      x = a;
    } else if (j == intervals) {
      x = b;
    } else if (numerator == 0) {
      x = mid;
    } else {
      x = mid + half * sin(pi * numerator / (2 * intervals));
    }
    points[static_cast<std::size_t>(j)] = std::move(x);
  }
  return points;
}

LevelledSolution solve_system(Sampler& g, std::span<const Real> nodes, const Real& a,
                              const Real& b, const Precision& p) {
  const std::size_t size = nodes.size();
  if (size < 2) {
    throw SingularSystemError("levelled system needs at least two nodes");
  }
  for (std::size_t i = 0; i + 1 < size; ++i) {
    if (!(nodes[i] < nodes[i + 1])) {
      throw SingularSystemError("levelled system nodes must be strictly increasing");
    }
  }
  if (nodes.front() < a || nodes.back() > b) {
    throw SingularSystemError("levelled system nodes must lie in [a, b]");
  }
  const std::size_t k1 = size - 1;  // number of polynomial coefficients
  // Rows [T_0(s_i) .. T_k(s_i) | (-1)^i] = g(t_i).
  std::vector<std::vector<Real>> m(size, std::vector<Real>(size + 1, Real(0)));
  for (std::size_t i = 0; i < size; ++i) {
    const Real s = (2 * nodes[i] - a - b) / (b - a);
    Real t_prev = 1;
    Real t_cur = s;
    for (std::size_t j = 0; j < k1; ++j) {
      if (j == 0) {
        m[i][j] = 1;
      } else if (j == 1) {
        m[i][j] = s;
      } else {
        Real t_next = 2 * s * t_cur - t_prev;
        t_prev = std::move(t_cur);
        t_cur = t_next;
        m[i][j] = std::move(t_next);
      }
    }
    m[i][k1] = (i % 2 == 0) ? 1 : -1;
    m[i][size] = g(nodes[i]);
  }

  // Full pivoting; column permutation tracked in `column`.
  std::vector<std::size_t> column(size);
  for (std::size_t j = 0; j < size; ++j) column[j] = j;
  Real largest_entry = 0;
  for (const auto& row : m) {
    for (std::size_t j = 0; j < size; ++j) largest_entry = std::max(largest_entry, Real(abs(row[j])));
  }
  const Real singular_threshold = largest_entry * p.epsilon(5);
  for (std::size_t step = 0; step < size; ++step) {
    std::size_t pivot_row = step;
    std::size_t pivot_col = step;
    Real pivot_size = -1;
    for (std::size_t i = step; i < size; ++i) {
      for (std::size_t j = step; j < size; ++j) {
        if (abs(m[i][j]) > pivot_size) {
          pivot_size = abs(m[i][j]);
          pivot_row = i;
          pivot_col = j;
        }
      }
    }
    if (pivot_size <= singular_threshold) {
      throw SingularSystemError("levelled system is singular (coincident nodes?)");
    }
    std::swap(m[step], m[pivot_row]);
    if (pivot_col != step) {
      for (auto& row : m) std::swap(row[step], row[pivot_col]);
      std::swap(column[step], column[pivot_col]);
    }
    for (std::size_t i = step + 1; i < size; ++i) {
      const Real factor = m[i][step] / m[step][step];
      if (factor == 0) continue;
      for (std::size_t j = step; j <= size; ++j) m[i][j] -= factor * m[step][j];
    }
  }
  std::vector<Real> permuted(size, Real(0));
  for (std::size_t i = size; i-- > 0;) {
    Real acc = m[i][size];
    for (std::size_t j = i + 1; j < size; ++j) acc -= m[i][j] * permuted[j];
    permuted[i] = acc / m[i][i];
  }
  std::vector<Real> solution(size, Real(0));
  for (std::size_t j = 0; j < size; ++j) solution[column[j]] = permuted[j];
  Real h = solution[k1];
  solution.resize(k1);
  return {Polynomial(std::move(solution), a, b), std::move(h)};
}

struct Extremum {
  std::size_t index;  // grid index
  int sign;
  Real magnitude;
};

// Maximizes sign * r on [lo, hi] by golden-section search; endpoints of [a, b]
// are considered explicitly since extrema often sit there.
std::pair<Real, Real> refine_extremum(Sampler& g, const Polynomial& poly, int sign,
                                      const Real& lo_in, const Real& hi_in, const Real& start,
                                      const Real& start_value, const Real& width) {
  auto objective = [&](const Real& x) { return Real(sign * (g(x) - poly(x))); };
  const Real inverse_phi = (sqrt(Real(5)) - 1) / 2;
  Real lo = lo_in;
  Real hi = hi_in;
  Real x1 = hi - inverse_phi * (hi - lo);
  Real x2 = lo + inverse_phi * (hi - lo);
  Real f1 = objective(x1);
  Real f2 = objective(x2);
  while (hi - lo > width) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inverse_phi * (hi - lo);
      f2 = objective(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inverse_phi * (hi - lo);
      f1 = objective(x1);
    }
  }
  Real best_x = start;
  Real best = start_value;
  auto consider = [&](const Real& x, const Real& value) {
    if (value > best) {
      best = value;
      best_x = x;
    }
  };
  consider(x1, f1);
  consider(x2, f2);
  if (lo_in == poly.a()) consider(lo_in, objective(lo_in));
  if (hi_in == poly.b()) consider(hi_in, objective(hi_in));
  return {best_x, Real(sign * best)};
}

ExchangeResult exchange_impl(Sampler& g, const Polynomial& poly,
                             std::span<const Real> current_nodes,
                             const std::vector<Real>& base_grid, const Precision& p) {
  const int required = poly.degree() + 2;
  std::vector<Real> grid = base_grid;
  grid.insert(grid.end(), current_nodes.begin(), current_nodes.end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  std::vector<Real> residual(grid.size());
  Real largest = 0;
  Real scale = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Real& gx = g(grid[i]);
    residual[i] = gx - poly(grid[i]);
    largest = std::max(largest, Real(abs(residual[i])));
    scale = std::max(scale, Real(abs(gx)));
  }

  ExchangeResult result;
  if (largest <= residual_floor(p, scale)) {
    result.exact = true;
    result.nodes.assign(current_nodes.begin(), current_nodes.end());
    for (const Real& t : result.nodes) result.residuals.push_back(g(t) - poly(t));
    result.max_residual = largest;
    return result;
  }

  // One extremum per run of constant sign.
  std::vector<Extremum> runs;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const int s = sign_of(residual[i]);
    if (s == 0) continue;
    const Real magnitude = abs(residual[i]);
    if (!runs.empty() && runs.back().sign == s) {
      if (magnitude > runs.back().magnitude) {
        runs.back().index = i;
        runs.back().magnitude = magnitude;
      }
    } else {
      runs.push_back({i, s, magnitude});
    }
  }
  if (static_cast<int>(runs.size()) < required) {
    std::ostringstream os;
    os << "alternation lost: residual has " << runs.size() << " sign runs on a grid of "
       << grid.size() << " points, " << required << " required";
    throw AlternationLostError(os.str(), static_cast<int>(runs.size()), required);
  }

  // Reduce to `required` alternating extrema, never dropping the global maximum.
  while (static_cast<int>(runs.size()) > required) {
    if (static_cast<int>(runs.size()) - required == 1) {
      if (runs.front().magnitude < runs.back().magnitude) {
        runs.erase(runs.begin());
      } else {
        runs.pop_back();
      }
      continue;
    }
    std::size_t smallest = 0;
    for (std::size_t j = 1; j < runs.size(); ++j) {
      if (runs[j].magnitude < runs[smallest].magnitude) smallest = j;
    }
    if (smallest == 0 || smallest + 1 == runs.size()) {
      runs.erase(runs.begin() + static_cast<std::ptrdiff_t>(smallest));
    } else {
      const std::size_t neighbour =
          runs[smallest - 1].magnitude < runs[smallest + 1].magnitude ? smallest - 1 : smallest + 1;
      const std::size_t first = std::min(smallest, neighbour);
      runs.erase(runs.begin() + static_cast<std::ptrdiff_t>(first),
                 runs.begin() + static_cast<std::ptrdiff_t>(first + 2));
    }
  }

  const Real width = (poly.b() - poly.a()) * Real("1e-12");
  std::vector<Real> refined_nodes;
  std::vector<Real> refined_residuals;
  for (const Extremum& e : runs) {
    const std::size_t lo = e.index == 0 ? 0 : e.index - 1;
    const std::size_t hi = std::min(e.index + 1, grid.size() - 1);
    auto [x, r] = refine_extremum(g, poly, e.sign, grid[lo], grid[hi], grid[e.index],
                                  Real(e.sign * residual[e.index]), width);
    refined_nodes.push_back(std::move(x));
    refined_residuals.push_back(std::move(r));
  }
  bool ordered = true;
  for (std::size_t j = 0; j + 1 < refined_nodes.size(); ++j) {
    if (!(refined_nodes[j] < refined_nodes[j + 1]) ||
        sign_of(refined_residuals[j]) == sign_of(refined_residuals[j + 1])) {
      ordered = false;
    }
  }
  if (!ordered) {
    refined_nodes.clear();
    refined_residuals.clear();
    for (const Extremum& e : runs) {
      refined_nodes.push_back(grid[e.index]);
      refined_residuals.push_back(residual[e.index]);
    }
  }
  result.nodes = std::move(refined_nodes);
  result.residuals = std::move(refined_residuals);
  result.max_residual = largest;
  for (const Real& r : result.residuals) result.max_residual = std::max(result.max_residual, Real(abs(r)));
  return result;
}

int validated_degree(int degree) {
  if (degree < 0) throw ConfigError("polynomial degree must be non-negative");
  return degree;
}

}  // namespace

Real residual_floor(const Precision& p, const Real& scale) {
  return p.epsilon(10) * std::max(Real(1), scale);
}

std::vector<Real> initial_nodes(const Real& a, const Real& b, int degree) {
  validated_degree(degree);
  if (!(a < b)) throw ConfigError("interval must satisfy a < b");
  return chebyshev_extrema(a, b, degree + 2);
}

LevelledSolution solve_levelled_system(const RealFunction& g, std::span<const Real> nodes,
                                       const Real& a, const Real& b, const Precision& p) {
  PrecisionScope scope(p);
  Sampler sampler(g);
  return solve_system(sampler, nodes, a, b, p);
}

ExchangeResult exchange(const RealFunction& g, const Polynomial& polynomial,
                        std::span<const Real> current_nodes, const Precision& p,
                        int grid_multiplier) {
  PrecisionScope scope(p);
  if (grid_multiplier < 1) throw ConfigError("grid multiplier must be positive");
  Sampler sampler(g);
  const auto grid =
      chebyshev_extrema(polynomial.a(), polynomial.b(), grid_multiplier * (polynomial.degree() + 2));
  return exchange_impl(sampler, polynomial, current_nodes, grid, p);
}

MinimaxResult minimax(const RealFunction& g, const Real& a, const Real& b, int degree,
                      const MinimaxSettings& settings, const Precision& p) {
  PrecisionScope scope(p);
  validated_degree(degree);
  if (!(a < b)) throw ConfigError("interval must satisfy a < b");
  if (settings.grid_multiplier < 1) throw ConfigError("grid multiplier must be positive");
  if (settings.max_iterations < 1) throw ConfigError("iteration cap must be positive");
  if (!(settings.tol > 0) || settings.tol < p.epsilon(10)) {
    throw ConfigError("minimax tolerance must be at least 10^(-digits + 10)");
  }

  Sampler sampler(g);
  const auto grid = chebyshev_extrema(a, b, settings.grid_multiplier * (degree + 2));
  std::vector<Real> nodes = initial_nodes(a, b, degree);
  std::vector<Real> history;

  for (int iteration = 1; iteration <= settings.max_iterations; ++iteration) {
    LevelledSolution solution = solve_system(sampler, nodes, a, b, p);
    history.push_back(abs(solution.levelled_error));
    ExchangeResult exchanged = exchange_impl(sampler, solution.polynomial, nodes, grid, p);

    Real smallest = abs(exchanged.residuals.front());
    Real biggest = smallest;
    for (const Real& r : exchanged.residuals) {
      smallest = std::min(smallest, Real(abs(r)));
      biggest = std::max(biggest, Real(abs(r)));
    }
    const bool levelled =
        exchanged.exact || (biggest > 0 && (biggest - smallest) / biggest <= settings.tol);
    if (levelled) {
      MinimaxResult result{solution.polynomial, exchanged.max_residual, exchanged.nodes,
                           exchanged.residuals, iteration, history, smallest,
                           exchanged.max_residual, exchanged.exact, 0};
      result.evaluations = sampler.evaluations();
      return result;
    }
    nodes = std::move(exchanged.nodes);
  }
  std::ostringstream os;
  os << "minimax did not converge in " << settings.max_iterations << " iterations (last |h| "
     << to_decimal_string(history.back(), 8) << ")";
  throw NonConvergenceError(os.str(), std::move(history));
}

EquioscillationReport verify_equioscillation(const MinimaxResult& result, const RealFunction& g,
                                             const Real& rel_tol, const Precision& p) {
  PrecisionScope scope(p);
  EquioscillationReport report;
  const auto& nodes = result.nodes;
  Real scale = 0;
  for (const Real& t : nodes) {
    const Real gt = g(t);
    scale = std::max(scale, Real(abs(gt)));
    report.residuals.push_back(gt - result.polynomial(t));
  }
  const std::size_t required = static_cast<std::size_t>(result.polynomial.degree() + 2);
  if (nodes.size() != required) {
    report.reason = "expected " + std::to_string(required) + " nodes, found " +
                    std::to_string(nodes.size());
    return report;
  }
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    if (!(nodes[i] < nodes[i + 1])) {
      report.offending_node = static_cast<int>(i + 1);
      report.reason = "nodes are not strictly increasing";
      return report;
    }
  }

  const Real floor = residual_floor(p, scale);
  if (result.delta_hat <= floor) {
    report.spread = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (abs(report.residuals[i]) > floor) {
        report.offending_node = static_cast<int>(i);
        report.reason = "residual above the exactness floor";
        return report;
      }
    }
    report.passed = true;
    report.reason = "exact representation (zero delta_hat)";
    return report;
  }

  Real worst = -1;
  int worst_index = -1;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Real deviation = abs(abs(report.residuals[i]) - result.delta_hat) / result.delta_hat;
    if (deviation > worst) {
      worst = deviation;
      worst_index = static_cast<int>(i);
    }
  }
  report.spread = worst;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    if (sign_of(report.residuals[i]) * sign_of(report.residuals[i + 1]) >= 0) {
      report.offending_node = static_cast<int>(i + 1);
      report.reason = "residual signs do not alternate";
      return report;
    }
  }
  if (worst > rel_tol) {
    report.offending_node = worst_index;
    report.reason = "node residual magnitude deviates from delta_hat by " +
                    to_decimal_string(worst, 6) + " (relative)";
    return report;
  }
  report.passed = true;
  report.reason = "alternating and levelled";
  return report;
}

}  // namespace ineqcert
