#pragma once

// Registry of every verification check, grouped as exact / closed-form /
// mc-fast / mc-slow, and the runner that executes a selection and writes the
// CSV/JSON reports.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include "snakelaws/discretesnake.hpp"
#include "snakelaws/exact_series.hpp"
#include "snakelaws/exactlaws.hpp"
#include "snakelaws/harness/config.hpp"
#include "snakelaws/harness/report.hpp"
#include "snakelaws/levycsbp.hpp"
#include "snakelaws/samplers.hpp"
#include "snakelaws/stats.hpp"

namespace snakelaws::harness {

using samplers::SampleBatch;

/// One registered check. `run` receives the config and the RNG stream index
/// reserved for it.
struct TestCase {
  std::string id;
  std::string group;
  int criterion = 0;
  std::function<std::vector<ComparisonReport>(const RunConfig&, std::uint64_t stream)> run;
};

inline const std::vector<std::string>& known_groups() {
  static const std::vector<std::string> g{"exact", "closed-form", "mc-fast", "mc-slow"};
  return g;
}

/// Stable 64-bit id of a test name (FNV-1a), used as its stream index.
inline std::uint64_t stream_of(const std::string& id) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : id) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// MC Laplace gates: for each lambda, mean of e^{-lambda x} against theory(lambda)
/// with a band of k standard errors.
template <typename Theory>
std::vector<ComparisonReport> laplace_gate(const SampleBatch& batch, const std::vector<double>& lambdas, Theory theory,
                                           const std::string& id_prefix, const std::string& citation, double k = 4.0) {
  if (batch.values.empty()) throw InputError("laplace_gate: empty batch");
  std::vector<ComparisonReport> out;
  for (double lambda : lambdas) {
    const auto est = stats::mean_of(batch.values, [lambda](double x) { return std::exp(-lambda * x); });
    auto r = se_gate_report(id_prefix + "[lambda=" + format_double(lambda) + "]", citation, theory(lambda), est.mean,
                            est.std_error, k);
    r.seed_info = batch.seed_info;
    out.push_back(std::move(r));
  }
  return out;
}

namespace detail {

inline std::string seed_of(const RunConfig& cfg, std::uint64_t stream) {
  return std::to_string(cfg.seed) + ":" + std::to_string(stream);
}

inline ComparisonReport with_seed(ComparisonReport r, const RunConfig& cfg, std::uint64_t stream) {
  r.seed_info = seed_of(cfg, stream);
  return r;
}

inline ComparisonReport count_report(std::string id, std::string citation, std::size_t failures) {
  return exact_report(std::move(id), std::move(citation), "0", std::to_string(failures));
}

const std::vector<double> kGrid{0.1, 0.5, 1.0, 2.0, 5.0, 10.0};

// ---------------------------------------------------------------- exact ----

inline std::vector<TestCase> exact_tests() {
  using namespace snakelaws::series;
  std::vector<TestCase> t;

  t.push_back({"series.F.coefficients", "exact", 1, [](const RunConfig& cfg, std::uint64_t) {
                 std::vector<ComparisonReport> out;
                 const long order = static_cast<long>(cfg.series_order);
                 const auto f = series_solve_F(cfg.series_order);
                 for (long n = 1; n <= order; ++n) {
                   out.push_back(exact_report("series.F.coef[" + std::to_string(n) + "]",
                                              "[z^n]F(z) = (-1)^(n-1)3^(1-n)/n! Gamma(3n/2-1)/Gamma(n/2)",
                                              exact_string(coef_F(n)), exact_string(f[static_cast<std::size_t>(n)])));
                 }
                 out.push_back(exact_report("series.F.coef1", "the right derivative of F at 0 is 1", "1/1",
                                            exact_string(f[1])));
                 out.push_back(exact_report("series.F.weighted_moment1",
                                            "N0(L^0 exp(-sigma/2)) = 1/2", "1/2",
                                            exact_string(weighted_moment_sigma(1))));
                 out.push_back(exact_report("series.F.squared_residual", "F^2(3+F) - 3 lambda^2 = 0", "true",
                                            squared_equation_residual(f).is_zero() ? "true" : "false"));
                 std::size_t bad = 0;
                 for (long n = 1; n <= order; ++n) {
                   const BigRational sign = (n % 2 == 1) ? BigRational(1) : BigRational(-1);
                   if (!(BigRational(1, 2) * sign * factorial(static_cast<unsigned long>(n)) * coef_F(n) == weighted_moment_sigma(n))) ++bad;
                 }
                 out.push_back(count_report("series.F.moment_linkage", "weighted moments: (1/2)(-1)^(n-1) n! [z^n]F(z)", bad));
                 return out;
               }});

  t.push_back({"series.Fplus.coefficients", "exact", 2, [](const RunConfig& cfg, std::uint64_t) {
                 std::vector<ComparisonReport> out;
                 const long order = static_cast<long>(cfg.series_order);
                 const auto fp = series_solve_Fplus(cfg.series_order);
                 for (long n = 1; n <= order; ++n) {
                   out.push_back(exact_report("series.Fplus.coef[" + std::to_string(n) + "]",
                                              "[lambda^n]F_+ = (-1)^(n+1)/n! (3 sqrt2)^(-n) 2^(2n+1)/(n+2) Gamma(3n/2-1)/Gamma(n/2)",
                                              exact_string(coef_Fplus(n)), exact_string(fp[static_cast<std::size_t>(n)])));
                 }
                 out.push_back(exact_report("series.Fplus.coef1", "[lambda]F_+ = 4 sqrt2/9",
                                            "0/1 + 4/9*sqrt2", exact_string(fp[1])));
                 out.push_back(exact_report("series.Fplus.cubic_residual",
                                            "P(F_+(lambda), lambda) = 0 with P(y,z) = 96 y^3 z^2 - 36 z^4 - ...",
                                            "true", fplus_cubic_residual(fp).is_zero() ? "true" : "false"));
                 std::size_t bad_products = 0, bad_moment = 0;
                 for (long n = 1; n <= order; ++n) {
                   if (!(coef_Fplus_from_products(n) == coef_Fplus(n))) ++bad_products;
                   const QuadExt sign((n % 2 == 1) ? 1 : -1);
                   if (!(sign * QuadExt(factorial(static_cast<unsigned long>(n))) * coef_Fplus(n) == weighted_moment_sigma_plus(n))) ++bad_moment;
                 }
                 out.push_back(count_report("series.Fplus.product_form", "F_+ coefficients from rational-product coefficients", bad_products));
                 out.push_back(count_report("series.Fplus.moment_identity",
                                            "N_0((L^0)^n e^{-sigma_+/2}) = (2 sqrt2/3)^n 2/(n+2) Gamma(3n/2-1)/Gamma(n/2)", bad_moment));
                 return out;
               }});

  t.push_back({"series.QR", "exact", 2, [](const RunConfig&, std::uint64_t) {
                 std::vector<ComparisonReport> out;
                 const char* cite = "Q(z) = -z^3/124416 + z/48, R(z) = z^2/3456 - 1/2 + 216/z^2, P(R(z),Q(z)) = 0";
                 out.push_back(exact_report("series.qr_identity", cite, "true", q_r_identity_check() ? "true" : "false"));
                 out.push_back(exact_report("series.qr_mutation", cite, "false",
                                            q_r_identity_check(BigRational(1, 47)) ? "true" : "false"));
                 const auto roots = q_roots();
                 std::string q_at_roots, r_at_pm;
                 for (const auto& z : roots) q_at_roots += exact_string(q_poly(z)) + ";";
                 r_at_pm = exact_string(r_rational(roots[0])) + ";" + exact_string(r_rational(roots[2]));
                 out.push_back(exact_report("series.q_roots", "Q^{-1}(0) = {-36 sqrt2, 0, 36 sqrt2}", "0/1;0/1;0/1;", q_at_roots));
                 out.push_back(exact_report("series.r_at_roots", "R(gamma_1(0)) = 1/3 = R(gamma_3(0))", "1/3;1/3", r_at_pm));
                 const auto d = branch_derivatives();
                 out.push_back(exact_report("series.branch_derivatives",
                                            "gamma_i'(0) = 1/Q'(gamma_i(0)); the -24 pair is (gamma_1, gamma_3)",
                                            "-24/1;48/1;-24/1", exact_string(d[0]) + ";" + exact_string(d[1]) + ";" + exact_string(d[2])));
                 return out;
               }});

  t.push_back({"series.bailey", "exact", 2, [](const RunConfig&, std::uint64_t) {
                 std::vector<ComparisonReport> out;
                 for (long n = 2; n <= 40; ++n) {
                   out.push_back(exact_report("series.bailey[" + std::to_string(n) + "]",
                                              "Bailey's theorem for 2F1(-n+1,n;-2n+3;1/2) and 2F1(-n+1,n;-2n-1;1/2)",
                                              "true", bailey_check(n) ? "true" : "false"));
                 }
                 return out;
               }});

  t.push_back({"series.rational_product", "exact", 2, [](const RunConfig&, std::uint64_t) {
                 std::size_t bad = 0;
                 for (long k = 1; k <= 30; ++k)
                   for (long l = 1; l <= 30; ++l) {
                     const auto prod = rational_product_series(k, l, 30);
                     for (long m = 0; m <= 30; ++m)
                       if (!(prod[static_cast<std::size_t>(m)] == rational_product_hypergeom_form(m, k, l))) ++bad;
                   }
                 return std::vector<ComparisonReport>{count_report(
                     "series.rational_product_vs_2f1",
                     "[lambda^m](1-2lambda)^{-k}(1-lambda)^{-l} = 2^m C(m+k-1,m) 2F1(-m,l;-m-k+1;1/2)", bad)};
               }});
  return t;
}

// ---------------------------------------------------------- closed-form ----

inline std::vector<TestCase> closed_form_tests() {
  using namespace snakelaws::laws;
  std::vector<TestCase> t;

  t.push_back({"laws.consistency", "closed-form", 3, [](const RunConfig& cfg, std::uint64_t) {
                 std::vector<ComparisonReport> out;
                 double worst_diag = 0.0, worst_resid = 0.0;
                 for (double l : kGrid)
                   for (double m : kGrid) {
                     const double root = solve_triple({l, m, m}).value;
                     const double closed = lt_sigma_laplace(l, m);
                     worst_diag = std::max(worst_diag, std::abs(root - closed) / closed);
                   }
                 for (double l : kGrid)
                   for (double m1 : kGrid)
                     for (double m2 : kGrid) {
                       const auto v = solve_triple({l, m1, m2});
                       const double target = std::sqrt(6.0) * l;
                       worst_resid = std::max(worst_resid, std::abs(h_mu(v.value, m1, m2) - target) / std::max(1.0, target));
                     }
                 out.push_back(numeric_report("laws.diagonal_consistency",
                                              "solve_triple(lambda,mu,mu) = closed form (cos/cosh branches)",
                                              0.0, worst_diag, 0.0, cfg.tolerance("laws.diagonal_consistency", 1e-10)));
                 out.push_back(numeric_report("laws.h_residual", "h_{mu1,mu2}(v) = sqrt6 lambda", 0.0, worst_resid, 0.0,
                                              cfg.tolerance("laws.h_residual", 1e-12)));
                 double worst_l0 = 0.0, worst_m0 = 0.0, worst_a0 = 0.0;
                 for (double m1 : kGrid)
                   for (double m2 : kGrid) worst_l0 = std::max(worst_l0, std::abs(solve_triple({0.0, m1, m2}).value - pair_laplace(m1, m2)));
                 for (double l : kGrid) {
                   worst_m0 = std::max(worst_m0, std::abs(solve_triple({l, 0.0, 0.0}).value - local_time_laplace(l)));
                   worst_a0 = std::max(worst_a0, std::abs(lt_level_laplace(l, 0.0) - local_time_laplace(l)));
                 }
                 out.push_back(numeric_report("laws.degenerate.lambda0", "h_{mu1,mu2}(v) = 0 root", 0.0, worst_l0, 0.0,
                                              cfg.tolerance("laws.degenerate.lambda0", 1e-12)));
                 out.push_back(numeric_report("laws.degenerate.mu0", "N_0(1-e^{-lambda L_0}) = 3^{1/3}/2 lambda^{2/3}", 0.0,
                                              worst_m0, 0.0, cfg.tolerance("laws.degenerate.mu0", 1e-12)));
                 out.push_back(numeric_report("laws.degenerate.level0", "level-a local time law at a = 0", 0.0, worst_a0, 0.0,
                                              cfg.tolerance("laws.degenerate.level0", 1e-12)));
                 return out;
               }});

  t.push_back({"laws.shape", "closed-form", 0, [](const RunConfig& cfg, std::uint64_t) {
                 std::vector<ComparisonReport> out;
                 // a = 1 +- 1e-8 around the branch switch, mu = 1/2.
                 const double mu = 0.5;
                 const double lambda_one = 2.0 * std::pow(2.0 * mu, 0.75) / std::sqrt(3.0);
                 const double below = lt_sigma_laplace(lambda_one * (1.0 - 1e-8), mu);
                 const double above = lt_sigma_laplace(lambda_one * (1.0 + 1e-8), mu);
                 out.push_back(numeric_report("laws.branch_continuity", "the two branches agree at a = 1", 0.0,
                                              std::abs(above - below) / below, 0.0, cfg.tolerance("laws.branch_continuity", 1e-6)));
                 std::size_t violations = 0;
                 for (std::size_t i = 0; i + 1 < kGrid.size(); ++i) {
                   const double a = kGrid[i], b = kGrid[i + 1];
                   for (double x : kGrid) {
                     if (solve_triple({a, x, x}).value > solve_triple({b, x, x}).value) ++violations;
                     if (solve_triple({x, a, x}).value > solve_triple({x, b, x}).value) ++violations;
                     if (solve_triple({x, x, a}).value > solve_triple({x, x, b}).value) ++violations;
                     if (lt_sigma_laplace(a, x) > lt_sigma_laplace(b, x)) ++violations;
                     if (lt_sigma_laplace(x, a) > lt_sigma_laplace(x, b)) ++violations;
                     if (lt_level_laplace(x, a) < lt_level_laplace(x, b)) ++violations;
                     if (exit_laplace(x, a) < exit_laplace(x, b)) ++violations;
                     if (lt_level_laplace(a, x) > lt_level_laplace(b, x)) ++violations;
                     if (pair_laplace(a, x) > pair_laplace(b, x)) ++violations;
                   }
                 }
                 out.push_back(count_report("laws.monotonicity", "monotone in rates and distance", violations));
                 return out;
               }});

  t.push_back({"laws.quadrature", "closed-form", 4, [](const RunConfig& cfg, std::uint64_t) {
                 std::vector<ComparisonReport> out;
                 for (double l : {0.5, 1.0, 2.0}) {
                   const double theory = local_time_laplace(l);
                   const std::string id = "laws.quad.local_time[lambda=" + format_double(l) + "]";
                   out.push_back(numeric_report(id, "density 3^{-2/3}/Gamma(1/3) l^{-5/3} vs Laplace 3^{1/3}/2 lambda^{2/3}",
                                                theory, local_time_laplace_by_quadrature(l), 0.0, cfg.tolerance(id, 1e-6 * theory)));
                 }
                 for (auto [m1, m2] : {std::pair{1.0, 1.0}, {4.0, 1.0}, {0.5, 0.0}, {2.0, 5.0}}) {
                   const std::string id = "laws.quad.pair[mu1=" + format_double(m1) + ",mu2=" + format_double(m2) + "]";
                   out.push_back(numeric_report(id, "g(s1,s2) = (2 sqrt(2 pi))^{-1}(s1+s2)^{-5/2} vs pair Laplace", pair_laplace(m1, m2),
                                                pair_laplace_by_quadrature(m1, m2), 0.0, cfg.tolerance(id, 1e-5)));
                 }
                 for (double v : {0.5, 1.0, 2.0}) {
                   for (auto [m1, m2] : {std::pair{0.0, 0.0}, {0.5, 0.5}, {1.0, 4.0}}) {
                     const std::string id = "laws.h_integral[v=" + format_double(v) + ",mu1=" + format_double(m1) + ",mu2=" + format_double(m2) + "]";
                     out.push_back(numeric_report(id, "phi(v) + int kappa(dx) e^{-vx}(F(mu1,mu2,x^2)-1) = h(v)/sqrt6",
                                                  0.0, verify_h_integral(v, m1, m2), 0.0, cfg.tolerance(id, 1e-6)));
                   }
                   const std::string id = "laws.phi_quadrature[v=" + format_double(v) + "]";
                   out.push_back(numeric_report(id, "phi(v) = int kappa(dx)(e^{-vx}-1+vx)", branching_mechanism(v),
                                                phi_by_quadrature(v), 0.0, cfg.tolerance(id, 1e-6)));
                 }
                 return out;
               }});
  return t;
}

// -------------------------------------------------------------- mc-fast ----

inline std::vector<TestCase> mc_fast_tests() {
  using namespace snakelaws::samplers;
  std::vector<TestCase> t;
  const double sqrt2 = std::numbers::sqrt2;

  t.push_back({"mc.stable", "mc-fast", 5, [](const RunConfig& cfg, std::uint64_t stream) {
                 const auto b = sample_batch("stable_two_thirds", cfg.mc_samples, cfg.seed, stream,
                                             [](RngStream& r) { return sample_stable_two_thirds(r); });
                 auto out = laplace_gate(b, {1.0, 2.0}, [](double l) { return std::exp(-std::pow(l, 2.0 / 3.0)); }, "mc.stable.laplace",
                                         "E[exp(-lambda T)] = exp(-lambda^{2/3})");
                 SampleBatch scaled = b;
                 for (auto& x : scaled.values) x *= 8.0;
                 auto s = laplace_gate(scaled, {1.0}, [](double l) { return std::exp(-4.0 * std::pow(l, 2.0 / 3.0)); },
                                       "mc.stable.scaled8", "8T has Laplace exp(-4 lambda^{2/3})");
                 out.insert(out.end(), s.begin(), s.end());
                 return out;
               }});

  t.push_back({"mc.u_kernel", "mc-fast", 5, [](const RunConfig& cfg, std::uint64_t stream) {
                 const auto b = sample_batch("U", cfg.mc_samples, cfg.seed, stream, [](RngStream& r) { return sample_U(r); });
                 return laplace_gate(b, {0.5, 1.0}, [](double beta) {
                   const double r = std::sqrt(2.0 * beta);
                   return (1.0 + r) * std::exp(-r);
                 }, "mc.u_kernel.laplace", "E[exp(-beta U)] = (1+sqrt(2 beta)) exp(-sqrt(2 beta))");
               }});

  t.push_back({"mc.sbm_total_lt", "mc-fast", 5, [](const RunConfig& cfg, std::uint64_t stream) {
                 std::vector<ComparisonReport> out;
                 for (double alpha : {1.0, 2.0}) {
                   const auto b = sample_batch("sbm_total_lt", cfg.mc_samples, cfg.seed, stream + static_cast<std::uint64_t>(alpha),
                                               [alpha](RngStream& r) { return sample_sbm_total_lt(alpha, r); });
                   auto g = laplace_gate(b, {1.0}, [alpha](double l) { return laws::sbm_local_time_laplace(l, 0.0, alpha); },
                                         "mc.sbm_total_lt.laplace[alpha=" + format_double(alpha) + "]",
                                         "E[exp(-lambda L^0)] = exp(-alpha 3^{1/3}/2 lambda^{2/3})");
                   out.insert(out.end(), g.begin(), g.end());
                 }
                 return out;
               }});

  t.push_back({"mc.increment", "mc-fast", 0, [](const RunConfig& cfg, std::uint64_t stream) {
                 constexpr double dt = 0.01;
                 const auto b = sample_batch("spectrally_positive_increment", cfg.mc_samples, cfg.seed, stream,
                                             [](RngStream& r) { return sample_spectrally_positive_increment(dt, r); });
                 auto out = laplace_gate(b, {1.0}, [](double l) { return std::exp(dt * laws::branching_mechanism(l)); },
                                         "mc.increment.laplace", "E[exp(-lambda(Y_t-1))] = exp(t phi(lambda))");
                 const auto m = stats::mean_estimate(b.values);
                 out.push_back(detail::with_seed(se_gate_report("mc.increment.mean", "Y has no drift (Laplace exponent has no linear term)",
                                                                0.0, m.mean, m.std_error), cfg, stream));
                 const std::size_t n_ks = std::min<std::size_t>(cfg.mc_samples, 100'000);
                 const auto big = sample_batch("increment_4dt", n_ks, cfg.seed, stream + 1,
                                               [](RngStream& r) { return sample_spectrally_positive_increment(4.0 * dt, r); });
                 auto small = sample_batch("increment_dt", n_ks, cfg.seed, stream + 2,
                                           [](RngStream& r) { return sample_spectrally_positive_increment(dt, r); });
                 for (auto& x : small.values) x *= std::pow(4.0, 2.0 / 3.0);
                 out.push_back(detail::with_seed(numeric_report("mc.increment.self_similarity", "stable scaling: increment(4dt) = 4^{2/3} increment(dt) in law",
                                                                0.0, stats::ks_two_sample(big.values, small.values), 0.0,
                                                                cfg.tolerance("mc.increment.self_similarity", 0.01)), cfg, stream));
                 return out;
               }});

  t.push_back({"mc.lt_sigma", "mc-fast", 6, [](const RunConfig& cfg, std::uint64_t stream) {
                 std::vector<ComparisonReport> out;
                 const auto b = sample_batch("lt_given_sigma", cfg.mc_samples, cfg.seed, stream,
                                             [](RngStream& r) { return sample_lt_given_sigma(1.0, r); });
                 for (int n : {1, 2}) {
                   const auto m = stats::mean_of(b.values, [n](double x) { return std::pow(x, n); });
                   auto r = se_gate_report("mc.lt_sigma.moment[" + std::to_string(n) + "]",
                                           "N0((L^0)^n | sigma=1) = 2^{3n/4}/3^n Gamma(3n/4+1)/Gamma(n/2+1)",
                                           series::conditional_moment(n, series::Conditioning::sigma), m.mean, m.std_error);
                   r.seed_info = b.seed_info;
                   out.push_back(r);
                 }
                 return out;
               }});

  t.push_back({"mc.lt_sigma_plus", "mc-fast", 6, [](const RunConfig& cfg, std::uint64_t stream) {
                 std::vector<ComparisonReport> out;
                 SampleBatch b{std::vector<double>(cfg.mc_samples), "lt_given_sigma_plus", detail::seed_of(cfg, stream)};
                 std::vector<double> dvals(cfg.mc_samples), tvals(cfg.mc_samples);
                 const RngStream root(cfg.seed, stream);
                 constexpr std::size_t chunk = 1 << 16;
                 for (std::size_t start = 0, c = 0; start < b.values.size(); start += chunk, ++c) {
                   RngStream d_rng = root.split(2 * c), t_rng = root.split(2 * c + 1);
                   for (std::size_t i = start; i < std::min(b.values.size(), start + chunk); ++i) b.values[i] = sample_lt_given_sigma_plus(1.0, d_rng, t_rng);
                 }
                 for (int n : {1, 2}) {
                   const auto m = stats::mean_of(b.values, [n](double x) { return std::pow(x, n); });
                   auto r = se_gate_report("mc.lt_sigma_plus.moment[" + std::to_string(n) + "]",
                                           "N0((L^0)^n | sigma_+=1) = (2^{9/4}/3)^n 2/(n+2) Gamma(3n/4+1)/Gamma(n/2+1)",
                                           series::conditional_moment(n, series::Conditioning::sigma_plus), m.mean, m.std_error);
                   r.seed_info = b.seed_info;
                   out.push_back(r);
                 }
                 // D and T from disjoint streams: correlation of (D, T^{-1/2}) over 1e5 draws.
                 const std::size_t nc = std::min<std::size_t>(cfg.mc_samples, 100'000);
                 RngStream d_rng = root.split(1'000'003), t_rng = root.split(1'000'004);
                 for (std::size_t i = 0; i < nc; ++i) {
                   dvals[i] = sample_D(d_rng);
                   tvals[i] = 1.0 / std::sqrt(sample_stable_two_thirds(t_rng));
                 }
                 dvals.resize(nc);
                 tvals.resize(nc);
                 out.push_back(detail::with_seed(numeric_report("mc.lt_sigma_plus.independence", "D and T independent", 0.0,
                                                                stats::correlation(dvals, tvals), 0.0, 4.0 / std::sqrt(static_cast<double>(nc))),
                                                 cfg, stream));
                 return out;
               }});

  t.push_back({"mc.D", "mc-fast", 0, [](const RunConfig& cfg, std::uint64_t stream) {
                 std::vector<ComparisonReport> out;
                 const auto b = sample_batch("D", cfg.mc_samples, cfg.seed, stream, [](RngStream& r) { return sample_D(r); });
                 const double theory[] = {2.0 / 3.0, 0.5};
                 for (int n : {1, 2}) {
                   const auto m = stats::mean_of(b.values, [n](double x) { return std::pow(x, n); });
                   auto r = se_gate_report("mc.D.moment[" + std::to_string(n) + "]", "D has density 2x 1_[0,1](x)", theory[n - 1],
                                           m.mean, m.std_error);
                   r.seed_info = b.seed_info;
                   out.push_back(r);
                 }
                 return out;
               }});
  (void)sqrt2;
  return t;
}

// -------------------------------------------------------------- mc-slow ----

inline std::vector<TestCase> mc_slow_tests() {
  std::vector<TestCase> t;

  t.push_back({"snake", "mc-slow", 7, [](const RunConfig& cfg, std::uint64_t stream) {
                 std::vector<ComparisonReport> out;
                 const std::size_t trees = cfg.snake_trees;
                 std::vector<double> zero(trees), frac(trees);
                 const RngStream root(cfg.seed, stream);
                 for (std::size_t i = 0; i < trees; ++i) {
                   RngStream rng = root.split(i);
                   auto tree = snake::sample_plane_tree(cfg.snake_edges, rng);
                   const auto s = snake::stats(snake::assign_labels(std::move(tree), rng));
                   zero[i] = snake::rescaled_zero_count(s);
                   frac[i] = snake::positive_fraction(s);
                 }
                 const double limit_mean = snake::zero_count_limit_factor() * series::conditional_moment(1, series::Conditioning::sigma);
                 const auto zm = stats::mean_estimate(zero);
                 out.push_back(detail::with_seed(numeric_report("snake.zero_count_mean",
                                                                "n^{-3/4} #S_n -> 3^{1/2} 2^{-3/4} L^0 under N_0(.|sigma=1)",
                                                                limit_mean, zm.mean, zm.std_error,
                                                                cfg.tolerance("snake.zero_count_mean", 0.05 * limit_mean)), cfg, stream));
                 const auto cont = samplers::sample_batch("continuum", trees, cfg.seed, stream + 1, [](RngStream& r) {
                   return snake::zero_count_limit_factor() * samplers::sample_lt_given_sigma(1.0, r);
                 });
                 out.push_back(detail::with_seed(numeric_report("snake.zero_count_ks", "n^{-3/4} #S_n vs 3^{1/2} 2^{-3/4} (2^{3/4}/3) T^{-1/2}",
                                                                0.0, stats::ks_two_sample(zero, cont.values), 0.0,
                                                                cfg.tolerance("snake.zero_count_ks", 0.03)), cfg, stream));
                 const auto fm = stats::mean_estimate(frac);
                 out.push_back(detail::with_seed(numeric_report("snake.positive_fraction_mean",
                                                                "sigma_+ given sigma = s is uniform over [0,s]", 0.5, fm.mean,
                                                                fm.std_error, cfg.tolerance("snake.positive_fraction_mean", 0.025)), cfg, stream));
                 out.push_back(detail::with_seed(numeric_report("snake.positive_fraction_ks",
                                                                "sigma_+ given sigma = s is uniform over [0,s]", 0.0,
                                                                stats::ks_one_sample(frac, [](double x) { return std::clamp(x, 0.0, 1.0); }), 0.0,
                                                                cfg.tolerance("snake.positive_fraction_ks", 0.03)), cfg, stream));
                 return out;
               }});

  t.push_back({"levy", "mc-slow", 8, [](const RunConfig& cfg, std::uint64_t stream) {
                 std::vector<ComparisonReport> out;
                 const levy::PathConfig pc{cfg.levy_dt, cfg.levy_t_max, 1.0, cfg.levy_guard};
                 const std::size_t n = cfg.levy_paths;
                 std::vector<double> t0(n);
                 std::size_t censored = 0;
                 const RngStream root(cfg.seed, stream);
                 constexpr std::size_t chunk = 4096;
                 for (std::size_t start = 0, c = 0; start < n; start += chunk, ++c) {
                   RngStream rng = root.split(c);
                   for (std::size_t i = start; i < std::min(n, start + chunk); ++i) {
                     const auto h = levy::simulate_hitting_time(pc, rng);
                     t0[i] = h.t0;
                     censored += h.censored ? 1 : 0;
                   }
                 }
                 const double c38 = std::cbrt(3.0 / 8.0);
                 for (double l : {0.5, 1.0, 2.0}) {
                   const auto m = stats::mean_of(t0, [l](double x) { return std::exp(-l * x); });
                   const std::string id = "levy.laplace[lambda=" + format_double(l) + "]";
                   out.push_back(detail::with_seed(numeric_report(id, "E[e^{-lambda T_0}] = e^{-phi^{-1}(lambda)}, phi^{-1}(lambda) = (3/8)^{1/3} lambda^{2/3}",
                                                                  std::exp(-c38 * std::pow(l, 2.0 / 3.0)), m.mean, m.std_error,
                                                                  cfg.tolerance(id, 0.02)), cfg, stream));
                 }
                 // Reference (3/8)^{1/2} T, censored at the same horizon.
                 auto ref = samplers::sample_batch("scaled_stable", n, cfg.seed, stream + 1,
                                                   [](RngStream& r) { return std::sqrt(3.0 / 8.0) * samplers::sample_stable_two_thirds(r); });
                 for (auto& x : ref.values) x = std::min(x, cfg.levy_t_max);
                 out.push_back(detail::with_seed(numeric_report("levy.ks_vs_stable", "T_0 has Laplace e^{-(3/8)^{1/3} lambda^{2/3}}, i.e. (3/8)^{1/2} T",
                                                                0.0, stats::ks_two_sample(t0, ref.values), 0.0,
                                                                cfg.tolerance("levy.ks_vs_stable", 0.02)), cfg, stream));
                 const double frac = static_cast<double>(censored) / static_cast<double>(n);
                 const double bound = levy::stable_two_thirds_tail_bound(cfg.levy_t_max / std::sqrt(3.0 / 8.0));
                 const double se = std::sqrt(bound * (1.0 - bound) / static_cast<double>(n));
                 auto r = numeric_report("levy.censored_fraction", "tail of (3/8)^{1/2} T beyond t_max (Laplace-transform bound)", 0.0, frac, se,
                                         bound + 4.0 * se);
                 out.push_back(detail::with_seed(r, cfg, stream));
                 return out;
               }});

  t.push_back({"levy.refinement", "mc-slow", 0, [](const RunConfig& cfg, std::uint64_t stream) {
                 // Nested grids 16dt, 8dt, 4dt monitor one fine path each.
                 const levy::PathConfig pc{16.0 * cfg.levy_dt, cfg.levy_t_max, 1.0, 0.0};
                 const std::size_t n = cfg.refinement_paths;
                 std::vector<double> sums(3, 0.0);
                 const RngStream root(cfg.seed, stream);
                 for (std::size_t i = 0; i < n; ++i) {
                   RngStream rng = root.split(i);
                   const auto h = levy::simulate_hitting_time_levels(pc, 3, rng);
                   for (std::size_t l = 0; l < 3; ++l) sums[l] += std::exp(-h[l].t0);
                 }
                 const double target = std::exp(-std::cbrt(3.0 / 8.0));
                 std::vector<double> bias(3);
                 for (std::size_t l = 0; l < 3; ++l) bias[l] = std::abs(sums[l] / static_cast<double>(n) - target);
                 std::size_t violations = (bias[1] > bias[0] ? 1 : 0) + (bias[2] > bias[1] ? 1 : 0);
                 auto r = count_report("levy.refinement_monotone",
                                       "E[e^{-T_0}] = e^{-(3/8)^{1/3}}; halving dt moves the estimate toward it", violations);
                 r.uncertainty = format_double(bias[0]) + ";" + format_double(bias[1]) + ";" + format_double(bias[2]);
                 return std::vector<ComparisonReport>{with_seed(r, cfg, stream)};
               }});

  t.push_back({"csbp", "mc-slow", 0, [](const RunConfig& cfg, std::uint64_t stream) {
                 std::vector<ComparisonReport> out;
                 const levy::PathConfig pc{cfg.levy_dt, cfg.levy_t_max, 1.0, 0.0};
                 const RngStream root(cfg.seed, stream);
                 double worst = 0.0;
                 std::size_t used = 0, censored = 0, negative = 0, not_absorbed = 0;
                 for (std::size_t i = 0; i < cfg.csbp_paths; ++i) {
                   RngStream rng = root.split(i);
                   const auto path = levy::simulate_path(pc, rng);
                   if (path.hit.censored) {
                     ++censored;
                     continue;
                   }
                   const auto chk = levy::lamperti_check(path);
                   worst = std::max(worst, chk.rel_deviation);
                   negative += chk.nonnegative ? 0 : 1;
                   not_absorbed += chk.absorbed ? 0 : 1;
                   ++used;
                 }
                 const char* cite = "Lamperti transformation, int_0^inf X_r dr has the law of T_0";
                 out.push_back(detail::with_seed(numeric_report("csbp.integral_vs_t0", cite, 0.0, worst, 0.0,
                                                                cfg.tolerance("csbp.integral_vs_t0", 0.01)), cfg, stream));
                 out.push_back(detail::with_seed(count_report("csbp.nonnegative_absorbed", cite, negative + not_absorbed), cfg, stream));
                 auto cr = exact_report("csbp.censored_excluded", cite, std::to_string(cfg.csbp_paths), std::to_string(used + censored));
                 cr.uncertainty = std::to_string(censored) + " censored";
                 out.push_back(detail::with_seed(cr, cfg, stream));
                 return out;
               }});
  return t;
}

}  // namespace detail

/// Every registered test, in report order.
inline std::vector<TestCase> all_tests() {
  std::vector<TestCase> t;
  for (auto&& part : {detail::exact_tests(), detail::closed_form_tests(), detail::mc_fast_tests(), detail::mc_slow_tests()})
    t.insert(t.end(), part.begin(), part.end());
  return t;
}

inline std::vector<TestCase> select_tests(const std::vector<std::string>& groups) {
  for (const auto& g : groups) {
    if (g != "all" && std::find(known_groups().begin(), known_groups().end(), g) == known_groups().end())
      throw ConfigError("unknown test group '" + g + "'");
  }
  const bool everything = std::find(groups.begin(), groups.end(), "all") != groups.end();
  std::vector<TestCase> out;
  for (auto& t : all_tests())
    if (everything || std::find(groups.begin(), groups.end(), t.group) != groups.end()) out.push_back(std::move(t));
  return out;
}

/// Runs the tests concurrently (each owns its stream), then assembles the
/// reports serially in registry order.
inline std::vector<ComparisonReport> execute(const std::vector<TestCase>& tests, const RunConfig& cfg) {
  std::vector<std::vector<ComparisonReport>> results(tests.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tests.size(); i = next++) {
      const auto start = std::chrono::steady_clock::now();
      const std::uint64_t stream = stream_of(tests[i].id);
      try {
        results[i] = tests[i].run(cfg, stream);
      } catch (const std::exception& e) {
        auto r = exact_report(tests[i].id + ".error", "harness", "no exception", std::string("exception: ") + e.what());
        results[i] = {r};
      }
      const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      for (auto& r : results[i]) {
        r.runtime_ms = ms;
        r.criterion = tests[i].criterion;
        if (r.seed_info.empty()) r.seed_info = "-";
      }
    }
  };
  unsigned n = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  n = std::min<unsigned>(n, static_cast<unsigned>(std::max<std::size_t>(1, tests.size())));
  std::vector<std::jthread> pool;
  for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  pool.clear();
  std::vector<ComparisonReport> out;
  for (auto& r : results) out.insert(out.end(), r.begin(), r.end());
  return out;
}

/// Writes report.csv, report.json, digest.txt and config.txt under cfg.out_dir.
inline void write_reports(const std::vector<ComparisonReport>& reports, const RunConfig& cfg) {
  namespace fs = std::filesystem;
  fs::create_directories(cfg.out_dir);
  const fs::path dir(cfg.out_dir);
  {
    std::ofstream csv(dir / "report.csv", std::ios::binary);
    write_csv(csv, reports, cfg.timing);
  }
  {
    nlohmann::ordered_json j;
    j["config"] = cfg.serialize();
    j["reports"] = nlohmann::ordered_json::array();
    for (const auto& r : reports) j["reports"].push_back(to_json(r, cfg.timing));
    std::ofstream js(dir / "report.json", std::ios::binary);
    js << j.dump(2) << '\n';
  }
  {
    std::ofstream dg(dir / "digest.txt", std::ios::binary);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(report_digest(reports)));
    dg << buf << '\n';
  }
  std::ofstream(dir / "config.txt", std::ios::binary) << cfg.serialize();
}

/// Exit code 0 iff every selected verdict passes, 1 otherwise.
inline int run_suite(const RunConfig& cfg, std::vector<ComparisonReport>* reports_out = nullptr) {
  const auto tests = select_tests(cfg.groups);
  auto reports = execute(tests, cfg);
  write_reports(reports, cfg);
  const bool ok = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.pass; });
  if (reports_out) *reports_out = std::move(reports);
  return ok ? 0 : 1;
}

}  // namespace snakelaws::harness
