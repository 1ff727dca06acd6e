#include "multiweb/verify.hpp"

#include <cmath>
#include <complex>
#include <exception>
#include <functional>
#include <sstream>

#include "multiweb/cycle.hpp"
#include "multiweb/fibonacci.hpp"
#include "multiweb/gauge.hpp"
#include "multiweb/graph.hpp"
#include "multiweb/laplacian.hpp"
#include "multiweb/tiles.hpp"
#include "multiweb/window.hpp"

namespace multiweb {

namespace {

std::vector<int> odd_lengths(int from, int to) {
  std::vector<int> out;
  for (int l = from; l <= to; l += 2) out.push_back(l);
  return out;
}

double rel_diff(std::complex<double> a, std::complex<double> b) {
  return std::abs(a - b) / std::max(1.0, std::abs(b));
}

CheckResult tile_counts(bool quick) {
  std::ostringstream why;
  bool ok = true;
  for (int l : odd_lengths(3, quick ? 11 : 17)) {
    const auto n = enumerate_tiles(make_cycle(l)).size();
    if (BigInt(n) != lucas(l)) {
      ok = false;
      why << "cycle " << l << ": " << n << " != " << lucas(l) << "; ";
    }
  }
  for (int n = 0; n <= (quick ? 14 : 20); ++n) {
    const auto c = enumerate_tiles(make_path(n)).size();
    if (BigInt(c) != fibonacci(n + 1)) {
      ok = false;
      why << "path " << n << ": " << c << "; ";
    }
  }
  return {"tile counts match Lucas / Fibonacci", ok, why.str()};
}

CheckResult critical_density(bool quick) {
  std::ostringstream why;
  bool ok = true;
  for (int l : odd_lengths(3, quick ? 9 : 13)) {
    const auto tiles = homogenized_tiles(make_cycle(l));
    const Rational a = cycle::alpha_hat(l);
    if (a != cycle::alpha_hat_from_tiles(tiles, l) ||
        a != cycle::alpha_hat_from_line_counts(l)) {
      ok = false;
      why << "L=" << l << " alpha_hat mismatch; ";
    }
  }
  return {"critical density three ways", ok, why.str()};
}

CheckResult gauge_at_alpha_hat(bool quick) {
  std::ostringstream why;
  bool ok = true;
  double worst = 0.0;
  for (int l : odd_lengths(3, quick ? 9 : 13)) {
    const auto tiles = homogenized_tiles(make_cycle(l));
    const std::vector<double> w(tiles.size(), 1.0);
    const auto alpha = DensityVector::uniform(l, static_cast<double>(cycle::alpha_hat(l)));
    const CriticalGauge g = solve_critical_gauge(tiles, w, alpha);
    const double t = static_cast<double>(tiles.size());
    const double x = std::pow(t, -1.0 / l);
    for (Eigen::Index v = 0; v < g.x.size(); ++v) worst = std::max(worst, std::abs(g.x(v) - x));
    for (Eigen::Index k = 0; k < g.critical_weights.size(); ++k)
      worst = std::max(worst, std::abs(g.critical_weights(k) - 1.0 / t));
    const double sigma_err = std::abs(g.sigma - std::log(t));
    if (sigma_err > 1e-8) {
      ok = false;
      why << "L=" << l << " sigma off by " << sigma_err << "; ";
    }
  }
  if (worst > 1e-9) {
    ok = false;
    why << "x or w' off by " << worst;
  }
  return {"critical gauge at alpha_hat is uniform, sigma = log |T|", ok, why.str()};
}

CheckResult laplacian_entries(bool quick) {
  std::ostringstream why;
  bool ok = true;
  for (int l : odd_lengths(3, quick ? 11 : 17)) {
    const auto tiles = homogenized_tiles(make_cycle(l));
    const MatrixXd d = incidence_matrix(tiles, l);
    const MatrixXd delta = d * d.transpose();
    const auto c = cycle::circulant_entries(l);
    bool same = static_cast<double>(cycle::laplacian_corner(l)) == delta(0, 0) &&
                static_cast<double>(cycle::laplacian_border(l)) == delta(0, 1);
    for (int k = 0; k < l; ++k) same = same && static_cast<double>(c[k]) == delta(1, 1 + k);
    if (!same) {
      ok = false;
      why << "L=" << l << "; ";
    }
  }
  return {"closed-form Laplacian entries equal enumerated D D^T", ok, why.str()};
}

CheckResult inverse_laplacian(bool quick) {
  std::ostringstream why;
  double worst = 0.0;
  for (int l : odd_lengths(3, quick ? 11 : 17)) {
    const auto tiles = homogenized_tiles(make_cycle(l));
    const MatrixXd d = incidence_matrix(tiles, l);
    const MatrixXd delta = d * d.transpose();
    const MatrixXd inv = cycle::inverse_laplacian_closed(l);
    const double scale = delta.cwiseAbs().maxCoeff();
    worst = std::max(worst, (delta * inv - MatrixXd::Identity(l + 1, l + 1)).cwiseAbs().maxCoeff());
    worst = std::max(worst, (inv - pseudo_inverse_on_image(delta)).cwiseAbs().maxCoeff() * scale);
  }
  why << "max residual " << worst;
  return {"closed-form inverse Laplacian", worst <= 1e-9, why.str()};
}

CheckResult eigenvalue_audit(bool quick) {
  std::ostringstream why;
  double worst = 0.0;
  for (int l : odd_lengths(3, quick ? 11 : 21)) {
    const auto dft = cycle::circulant_eigenvalues(l);
    for (int k = 1; k < l; ++k)
      worst = std::max(worst, rel_diff(cycle::eigenvalue_closed_form(l, k), dft[k]));
  }
  why << "k>=1 max rel diff " << worst << "; k=0:";
  bool reproduced = true;
  for (int l : {3, 5}) {
    const double dft0 = cycle::circulant_eigenvalues(l)[0].real();
    const double closed0 = cycle::eigenvalue_closed_form(l, 0).real();
    why << " L=" << l << " DFT " << dft0 << " vs closed form " << closed0 << ";";
    reproduced = reproduced && std::abs(dft0 - closed0) > 1e-6 &&
                 static_cast<double>(cycle::lambda_zero(l)) == dft0;
  }
  return {"eigenvalue closed form (k>=1) and k=0 discrepancy", worst <= 1e-9 && reproduced,
          why.str()};
}

CheckResult g_and_root_sums(bool quick) {
  std::ostringstream why;
  double worst = 0.0;
  bool exact = true;
  for (int l : odd_lengths(3, quick ? 11 : 21)) {
    for (int j = 0; j < l; ++j) {
      const Rational closed = cycle::g_closed(l, j);
      exact = exact && closed == cycle::g_expansion(l, j);
      worst = std::max(worst, rel_diff(cycle::g_direct(l, j), static_cast<double>(closed)));
      worst = std::max(worst, rel_diff(cycle::root_of_unity_sum_direct(l, j),
                                       static_cast<double>(cycle::root_of_unity_sum(l, j))));
    }
  }
  why << "max rel diff " << worst << (exact ? "" : "; expansion != closed form");
  return {"g_L and root-of-unity sums", exact && worst <= 1e-9, why.str()};
}

CheckResult gaussian_structure(bool quick) {
  std::ostringstream why;
  bool ok = true;
  for (int l : quick ? std::vector<int>{9} : std::vector<int>{9, 11}) {
    const auto tiles = homogenized_tiles(make_cycle(l));
    const MatrixXd d = incidence_matrix(tiles, l);
    const double n = 100.0;
    const VectorXd c = VectorXd::Constant(tiles.size(), 1.0 / tiles.size());
    const auto law = gaussian_law(d, c, n);
    const auto diag = diagnose(law, d);
    const bool good = diag.asymmetry <= 1e-9 * n && diag.incidence_residual <= 1e-9 * n &&
                      diag.row_sum_residual <= 1e-9 * n &&
                      diag.min_eigenvalue >= -1e-9 * diag.trace;
    if (!good) {
      ok = false;
      why << "L=" << l << " min eig " << diag.min_eigenvalue << "; ";
    }
  }
  return {"Gaussian covariance symmetric, PSD, D Cov = 0", ok, why.str()};
}

CheckResult window_checks(bool quick) {
  std::ostringstream why;
  bool ok = window::enumerate_local_configs().size() == 21;
  for (int l : odd_lengths(11, quick ? 41 : 101)) {
    BigInt sum = 0;
    for (const auto& c : window::enumerate_local_configs()) sum += window::class_size(l, c);
    if (sum != lucas(l)) {
      ok = false;
      why << "partition identity fails at L=" << l << "; ";
    }
  }
  for (int l : quick ? std::vector<int>{11} : std::vector<int>{11, 15}) {
    const auto tiles = homogenized_tiles(make_cycle(l));
    const MatrixXd b = window::classify_tiles(l, tiles).matrix();
    const MatrixXd bd = b * incidence_matrix(tiles, l).transpose();
    const auto rows = window::aggregated_incidence(l);
    double diff = 0.0;
    for (int j = 0; j < bd.rows(); ++j)
      for (int v = 0; v <= l; ++v)
        diff = std::max(diff, std::abs(bd(j, v) - static_cast<double>(rows[j][v])));
    const double n = 50.0;
    const double cov_diff = (window::local_law(l, n).covariance -
                             window::local_law_explicit(l, n).covariance)
                                .cwiseAbs()
                                .maxCoeff();
    if (diff != 0.0 || cov_diff > 1e-9 * n) {
      ok = false;
      why << "L=" << l << " B D^T diff " << diff << ", Cov diff " << cov_diff << "; ";
    }
  }
  return {"local window classes and law", ok, why.str()};
}

}  // namespace

std::vector<CheckResult> run_verification(bool quick) {
  const std::vector<std::function<CheckResult(bool)>> checks{
      tile_counts,      critical_density, gauge_at_alpha_hat,
      laplacian_entries, inverse_laplacian, eigenvalue_audit,
      g_and_root_sums,  gaussian_structure, window_checks};
  std::vector<CheckResult> out;
  for (const auto& check : checks) {
    try {
      out.push_back(check(quick));
    } catch (const std::exception& e) {
      out.push_back({"exception", false, e.what()});
    }
  }
  return out;
}

}  // namespace multiweb
