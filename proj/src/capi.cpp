#include "bergman/bergman.h"

#include <cstring>
#include <iostream>
#include <sstream>

#include "json.hpp"
#include "suite.hpp"

using namespace bergman;

struct bergman_weight {
  WeightTransforms w;
};
struct bergman_partition {
  DyadicPartition p;
};
struct bergman_basis {
  std::shared_ptr<const OrthoBasis> b;
};
struct bergman_kernel {
  KernelSeries k;
};
struct bergman_measure {
  Measure m;
};
struct bergman_section {
  OperatorSection s;
};

namespace {

thread_local std::string g_last_error;

bergman_status to_status(ErrorCode c) {
  switch (c) {
    case ErrorCode::Ok: return BERGMAN_OK;
    case ErrorCode::InvalidArgument: return BERGMAN_ERR_INVALID_ARGUMENT;
    case ErrorCode::InvalidInterval: return BERGMAN_ERR_INVALID_INTERVAL;
    case ErrorCode::NonConvergent: return BERGMAN_ERR_NON_CONVERGENT;
    case ErrorCode::SizeExceeded: return BERGMAN_ERR_SIZE_EXCEEDED;
    case ErrorCode::NegativeEigenvalue: return BERGMAN_ERR_NEGATIVE_EIGENVALUE;
    case ErrorCode::DomainError: return BERGMAN_ERR_DOMAIN;
    case ErrorCode::NotUnit: return BERGMAN_ERR_NOT_UNIT;
    case ErrorCode::CoverageFailure: return BERGMAN_ERR_COVERAGE_FAILURE;
    case ErrorCode::LevelOverflow: return BERGMAN_ERR_LEVEL_OVERFLOW;
    case ErrorCode::TruncationFailure: return BERGMAN_ERR_TRUNCATION_FAILURE;
    case ErrorCode::DegenerateWeight: return BERGMAN_ERR_DEGENERATE_WEIGHT;
    case ErrorCode::MassOverflow: return BERGMAN_ERR_MASS_OVERFLOW;
    case ErrorCode::ParseError: return BERGMAN_ERR_PARSE;
    case ErrorCode::IoError: return BERGMAN_ERR_IO;
  }
  return BERGMAN_ERR_UNKNOWN;
}

template <typename F>
bergman_status guarded(F&& f) {
  try {
    f();
    return BERGMAN_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return BERGMAN_ERR_UNKNOWN;
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

Point point_from(const double* z, int n) {
  CVec v(n);
  for (int i = 0; i < n; ++i) v[i] = Complex(z[2 * i], z[2 * i + 1]);
  return Point(std::move(v));
}

nlohmann::ordered_json class_report_json(const ClassReport& rep, const WeightTransforms& w) {
  nlohmann::ordered_json j;
  j["weight"] = w.weight().describe();
  j["doubling_constant"] = rep.doubling_constant;
  j["doubling_overflow"] = rep.doubling_overflow;
  j["doubling_stable"] = rep.doubling_stable;
  if (rep.reverse_doubling)
    j["reverse_doubling"] = {{"K", rep.reverse_doubling->first},
                             {"C", rep.reverse_doubling->second}};
  if (rep.k_omega_upper_estimate) j["K_omega_upper_estimate"] = *rep.k_omega_upper_estimate;
  j["regular_band"] = {{"min", rep.regular_band.lo}, {"max", rep.regular_band.hi}};
  j["regular_trend"] = rep.regular_trend;
  j["rapidly_increasing"] = rep.rapidly_increasing;
  j["verdicts"] = {{"Dhat", rep.in_dhat},
                   {"Dcheck", rep.in_dcheck},
                   {"D", rep.in_d},
                   {"R", rep.in_r},
                   {"I", rep.in_i}};
  j["thresholds"] = {{"grid_size", rep.config.grid_size},
                     {"r_max", rep.config.r_max},
                     {"dhat_threshold", rep.config.dhat_threshold},
                     {"dhat_stability", rep.config.dhat_stability},
                     {"dcheck_threshold", rep.config.dcheck_threshold},
                     {"regular_band_ratio", rep.config.regular_band_ratio},
                     {"trend_flat", rep.config.trend_flat}};
  return j;
}

}  // namespace

extern "C" {

const char* bergman_version(void) { return "0.1.0"; }

const char* bergman_status_name(bergman_status s) {
  switch (s) {
    case BERGMAN_OK: return "Ok";
    case BERGMAN_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case BERGMAN_ERR_INVALID_INTERVAL: return "InvalidInterval";
    case BERGMAN_ERR_NON_CONVERGENT: return "NonConvergent";
    case BERGMAN_ERR_SIZE_EXCEEDED: return "SizeExceeded";
    case BERGMAN_ERR_NEGATIVE_EIGENVALUE: return "NegativeEigenvalue";
    case BERGMAN_ERR_DOMAIN: return "DomainError";
    case BERGMAN_ERR_NOT_UNIT: return "NotUnit";
    case BERGMAN_ERR_COVERAGE_FAILURE: return "CoverageFailure";
    case BERGMAN_ERR_LEVEL_OVERFLOW: return "LevelOverflow";
    case BERGMAN_ERR_TRUNCATION_FAILURE: return "TruncationFailure";
    case BERGMAN_ERR_DEGENERATE_WEIGHT: return "DegenerateWeight";
    case BERGMAN_ERR_MASS_OVERFLOW: return "MassOverflow";
    case BERGMAN_ERR_PARSE: return "ParseError";
    case BERGMAN_ERR_IO: return "IoError";
    case BERGMAN_ERR_UNKNOWN: return "Unknown";
  }
  return "Unknown";
}

const char* bergman_last_error(void) { return g_last_error.c_str(); }

void bergman_string_free(char* s) { delete[] s; }

bergman_status bergman_weight_create(const char* spec, int n, bergman_weight** out) {
  return guarded([&] {
    require(spec && out, ErrorCode::InvalidArgument, "null argument");
    *out = new bergman_weight{WeightTransforms(RadialWeight::parse(spec, n))};
  });
}

void bergman_weight_free(bergman_weight* w) { delete w; }

bergman_status bergman_weight_omega_hat(const bergman_weight* w, double r, double* out) {
  return guarded([&] { *out = w->w.omega_hat(r); });
}

bergman_status bergman_weight_moment(const bergman_weight* w, double s, double* out) {
  return guarded([&] { *out = w->w.moment(s); });
}

bergman_status bergman_weight_transform(const bergman_weight* w, const char* kind, double alpha,
                                        double r, double* out) {
  return guarded([&] {
    const std::string k = kind ? kind : "";
    WeightTransforms::StarKind sk;
    if (k == "star")
      sk = WeightTransforms::StarKind::Star;
    else if (k == "nstar")
      sk = WeightTransforms::StarKind::NStar;
    else if (k == "walpha")
      sk = WeightTransforms::StarKind::WAlpha;
    else if (k == "w1")
      sk = WeightTransforms::StarKind::W1;
    else
      fail(ErrorCode::InvalidArgument, "unknown transform kind");
    *out = w->w.star_family(sk, alpha, r);
  });
}

bergman_status bergman_weight_ball_mass(const bergman_weight* w, double* out) {
  return guarded([&] { *out = w->w.omega_ball(); });
}

bergman_status bergman_weight_block(const bergman_weight* w, double rad, double* out) {
  return guarded([&] {
    CVec a(w->w.n(), Complex(0.0, 0.0));
    a[0] = rad;
    *out = carleson_block_measure(w->w, Point(a));
  });
}

bergman_status bergman_weight_check_json(const bergman_weight* w, int grid_size, char** json_out) {
  return guarded([&] {
    ClassifyConfig cc;
    if (grid_size > 0) cc.grid_size = grid_size;
    nlohmann::ordered_json j = class_report_json(classify(w->w, cc), w->w);
    const Band mb = moment_tail_band(w->w);
    const Band sb = star_tail_band(w->w);
    j["moment_tail_band"] = {{"min", mb.lo}, {"max", mb.hi}, {"two_sided", mb.two_sided()}};
    j["star_tail_band"] = {{"min", sb.lo}, {"max", sb.hi}, {"two_sided", sb.two_sided()}};
    *json_out = dup_string(j.dump(2));
  });
}

bergman_status bergman_partition_create(int n, int kmax, uint64_t seed, bergman_partition** out) {
  return guarded([&] { *out = new bergman_partition{DyadicPartition(n, kmax, seed)}; });
}

void bergman_partition_free(bergman_partition* p) { delete p; }

bergman_status bergman_partition_level_count(const bergman_partition* p, int k, int* out) {
  return guarded([&] { *out = p->p.level_count(k); });
}

bergman_status bergman_partition_locate(const bergman_partition* p, const double* z, int* k_out,
                                        int* j_out) {
  return guarded([&] {
    const auto cell = p->p.locate(point_from(z, p->p.n()));
    *k_out = cell.k;
    *j_out = cell.j;
  });
}

bergman_status bergman_partition_emit_csv(const bergman_partition* p, char** csv_out) {
  return guarded([&] {
    std::ostringstream os;
    os.precision(17);
    os << "k,j";
    for (int i = 0; i < p->p.n(); ++i) os << ",center_re" << i << ",center_im" << i;
    os << ",shell_lo,shell_hi";
    for (int i = 0; i < p->p.n(); ++i) os << ",cap_re" << i << ",cap_im" << i;
    os << "\n";
    for (const auto& cell : p->p.all_cells()) {
      const Point c = p->p.cell_center(cell);
      const CVec xi = p->p.cap_center(cell);
      const auto [lo, hi] = p->p.shell(cell.k);
      os << cell.k << "," << cell.j;
      for (int i = 0; i < p->p.n(); ++i)
        os << "," << c.coords()[i].real() << "," << c.coords()[i].imag();
      os << "," << lo << "," << hi;
      for (int i = 0; i < p->p.n(); ++i) os << "," << xi[i].real() << "," << xi[i].imag();
      os << "\n";
    }
    *csv_out = dup_string(os.str());
  });
}

bergman_status bergman_basis_create(const bergman_weight* w, const char* space, double alpha,
                                    int max_degree, bergman_basis** out) {
  return guarded([&] {
    const std::string sp = space ? space : "";
    if (sp == "a2")
      *out = new bergman_basis{std::make_shared<OrthoBasis>(OrthoBasis::a2(w->w, max_degree))};
    else if (sp == "hw")
      *out =
          new bergman_basis{std::make_shared<OrthoBasis>(OrthoBasis::hw(w->w, alpha, max_degree))};
    else
      fail(ErrorCode::InvalidArgument, "space must be 'a2' or 'hw'");
  });
}

void bergman_basis_free(bergman_basis* b) { delete b; }

bergman_status bergman_basis_size(const bergman_basis* b, int* out) {
  return guarded([&] { *out = static_cast<int>(b->b->size()); });
}

bergman_status bergman_basis_norm(const bergman_basis* b, int i, double* out) {
  return guarded([&] {
    require(i >= 0 && i < static_cast<int>(b->b->size()), ErrorCode::InvalidArgument,
            "index out of range");
    *out = b->b->norm(i);
  });
}

bergman_status bergman_kernel_create(const bergman_weight* w, const char* space, double alpha,
                                     bergman_kernel** out) {
  return guarded([&] {
    const std::string sp = space ? space : "";
    if (sp == "a2")
      *out = new bergman_kernel{KernelSeries::bergman(w->w)};
    else if (sp == "hw")
      *out = new bergman_kernel{KernelSeries::hw(w->w, alpha)};
    else
      fail(ErrorCode::InvalidArgument, "space must be 'a2' or 'hw'");
  });
}

void bergman_kernel_free(bergman_kernel* k) { delete k; }

bergman_status bergman_kernel_eval(const bergman_kernel* k, const double* z, const double* w,
                                   double tol, double* re_out, double* im_out) {
  return guarded([&] {
    const Complex v = k->k.eval(point_from(z, k->k.n()), point_from(w, k->k.n()), tol);
    *re_out = v.real();
    *im_out = v.imag();
  });
}

bergman_status bergman_kernel_norm(const bergman_kernel* k, const bergman_weight* w,
                                   const double* z, double p, double* out) {
  return guarded([&] { *out = k->k.norm(w->w, point_from(z, k->k.n()), p); });
}

bergman_status bergman_kernel_verify_json(const bergman_weight* w, char** json_out) {
  return guarded([&] {
    nlohmann::ordered_json j;
    j["weight"] = w->w.weight().describe();
    const KernelSeries ks = KernelSeries::bergman(w->w);
    j["truncation"] = ks.truncation();
    // Hermitian symmetry on a few pairs
    Rng rng(2024);
    double sym = 0.0;
    for (int i = 0; i < 32; ++i) {
      const Point a = sample_ball_point(w->w.n(), 0.9, rng);
      const Point b = sample_ball_point(w->w.n(), 0.9, rng);
      sym = std::max(sym,
                     std::abs(ks.eval(a, b, 1e-12) - std::conj(ks.eval(b, a, 1e-12))));
    }
    j["hermitian_symmetry_max_err"] = sym;
    // closed form for the standard family
    if (w->w.weight().family == RadialWeight::Family::Standard) {
      double worst = 0.0;
      const double alpha = w->w.weight().param;
      for (int i = 0; i < 64; ++i) {
        const Point a = sample_ball_point(w->w.n(), 0.94, rng);
        const Point b = sample_ball_point(w->w.n(), 0.94, rng);
        const Complex closed =
            std::pow(Complex(1.0, 0.0) - inner(b, a), -(w->w.n() + 1.0 + alpha));
        worst = std::max(worst, std::abs(ks.eval(a, b, 1e-12) - closed) / std::abs(closed));
      }
      j["closed_form_max_rel_err"] = worst;
    }
    // coefficient identity against the H(W_0) kernel
    const KernelSeries kh = KernelSeries::hw(w->w, 0.0);
    double coef = 0.0;
    const size_t kcap = std::min({ks.truncation(), kh.truncation(), size_t(200)});
    for (size_t k = 0; k < kcap; ++k)
      coef = std::max(coef, std::abs(ks.coefficient(k) - kh.coefficient(k)) / ks.coefficient(k));
    j["w0_coefficient_max_rel_err"] = coef;
    // empirical kernel lower-bound delta: largest delta in a small grid with
    // |B_a(z)| >= 0.1 / omega(S_a) on sampled z in S_{a_delta}
    double best_delta = 0.0;
    for (double delta : {0.5, 0.25, 0.125, 0.0625}) {
      bool ok = true;
      for (double rad : {0.3, 0.6, 0.85}) {
        CVec av(w->w.n(), Complex(0.0, 0.0));
        av[0] = rad;
        const Point a(av);
        const double bound = 0.1 / carleson_block_measure(w->w, a);
        const double arad = 1.0 - delta * (1.0 - rad);
        for (int t = 0; t < 16 && ok; ++t) {
          // points of S_{a_delta} along the shared direction
          const double rr = arad + (0.999 - arad) * (t + 0.5) / 16.0;
          CVec zv(w->w.n(), Complex(0.0, 0.0));
          zv[0] = rr;
          if (rr * rad > ks.rho_max()) continue;
          if (std::abs(ks.eval(a, Point(zv), 1e-10)) < bound) ok = false;
        }
        if (!ok) break;
      }
      if (ok) {
        best_delta = delta;
        break;
      }
    }
    j["empirical_lower_bound_delta"] = best_delta;
    *json_out = dup_string(j.dump(2));
  });
}

bergman_status bergman_measure_parse(const bergman_weight* w, const char* arg,
                                     bergman_measure** out) {
  return guarded([&] {
    require(arg && out, ErrorCode::InvalidArgument, "null argument");
    *out = new bergman_measure{parse_measure_arg(arg, w->w)};
  });
}

void bergman_measure_free(bergman_measure* m) { delete m; }

bergman_status bergman_measure_total_mass(const bergman_measure* m, double* out) {
  return guarded([&] { *out = measure_total_mass(m->m); });
}

bergman_status bergman_section_toeplitz(const bergman_basis* b, const bergman_weight* w,
                                        const bergman_measure* mu, bergman_section** out) {
  return guarded([&] {
    if (b->b->space() == SpaceKind::A2)
      *out = new bergman_section{toeplitz_section(b->b, w->w, mu->m)};
    else
      *out = new bergman_section{htoeplitz_section(b->b, w->w, mu->m)};
  });
}

bergman_status bergman_section_volterra(const bergman_basis* b, const char* g_literal,
                                        bergman_section** out) {
  return guarded([&] {
    const Polynomial g = Polynomial::parse(g_literal ? g_literal : "", b->b->n());
    *out = new bergman_section{volterra_section(b->b, g)};
  });
}

void bergman_section_free(bergman_section* s) { delete s; }

bergman_status bergman_section_dim(const bergman_section* s, int* out) {
  return guarded([&] { *out = s->s.dim(); });
}

bergman_status bergman_section_spectrum(const bergman_section* s, double* out) {
  return guarded([&] {
    const Spectrum sp = s->s.spectrum();
    for (size_t i = 0; i < sp.eigenvalues.size(); ++i) out[i] = sp.eigenvalues[i];
  });
}

bergman_status bergman_section_schatten(const bergman_section* s, double p, double* out) {
  return guarded([&] { *out = s->s.schatten_pow(p); });
}

bergman_status bergman_berezin(const bergman_kernel* k, const bergman_measure* mu, const double* z,
                               double* out) {
  return guarded([&] {
    const auto* d = std::get_if<DiscreteMeasure>(&mu->m);
    require(d != nullptr, ErrorCode::InvalidArgument, "Berezin transform needs a discrete measure");
    *out = berezin(k->k, *d, point_from(z, k->k.n()));
  });
}

bergman_status bergman_report_carleson(const bergman_weight* w, const bergman_measure* mu,
                                       double p, double q, const bergman_partition* part,
                                       char** json_out) {
  return guarded([&] {
    *json_out = dup_string(report_to_json(carleson_quotient(w->w, mu->m, p, q, part->p)));
  });
}

bergman_status bergman_report_berezin(const bergman_weight* w, const bergman_measure* mu, double p,
                                      double q, const bergman_partition* part, char** json_out) {
  return guarded([&] {
    const auto* d = std::get_if<DiscreteMeasure>(&mu->m);
    require(d != nullptr, ErrorCode::InvalidArgument, "Berezin report needs a discrete measure");
    const KernelSeries ks = KernelSeries::bergman(w->w);
    *json_out = dup_string(report_to_json(berezin_quotient(ks, w->w, *d, p, q, part->p)));
  });
}

bergman_status bergman_report_qlessp(const bergman_weight* w, const bergman_measure* mu, double p,
                                     double q, double r, uint64_t seed, char** json_out) {
  return guarded([&] {
    ShellGrid grid;
    grid.seed = seed;
    *json_out = dup_string(report_to_json(qlessp_statistic(w->w, mu->m, p, q, r, grid)));
  });
}

bergman_status bergman_report_schatten_dyadic(const bergman_weight* w, const bergman_measure* mu,
                                              const bergman_partition* part, double p,
                                              double alpha, char** json_out) {
  return guarded([&] {
    *json_out = dup_string(report_to_json(schatten_dyadic(w->w, mu->m, part->p, p, alpha)));
  });
}

bergman_status bergman_report_schatten_integral(const bergman_weight* w,
                                                const bergman_measure* mu, double p, double r,
                                                double alpha, uint64_t seed, char** json_out) {
  return guarded([&] {
    ShellGrid grid;
    grid.seed = seed;
    *json_out = dup_string(report_to_json(schatten_integral(w->w, mu->m, p, r, alpha, grid)));
  });
}

bergman_status bergman_report_besov(const char* g_literal, int n, const bergman_partition* part,
                                    double p, char** json_out) {
  return guarded([&] {
    const Polynomial g = Polynomial::parse(g_literal ? g_literal : "", n);
    *json_out = dup_string(report_to_json(besov_statistic(g, part->p, p)));
  });
}

bergman_status bergman_besov_integral(const char* g_literal, int n, double p, double rmax,
                                      double* value_out, double* slope_out) {
  return guarded([&] {
    const Polynomial g = Polynomial::parse(g_literal ? g_literal : "", n);
    const BesovIntegral b = besov_integral(g, p, rmax);
    *value_out = b.value;
    if (slope_out) *slope_out = b.trend_slope;
  });
}

bergman_status bergman_suite_run(const char* preset, uint64_t seed, int verbose, int* failures,
                                 char** json_out) {
  return guarded([&] {
    SuiteConfig cfg;
    cfg.seed = seed;
    const std::string ps = preset ? preset : "desk";
    if (ps == "quick")
      cfg.quick = true;
    else
      require(ps == "desk", ErrorCode::InvalidArgument, "preset must be 'desk' or 'quick'");
    const auto results = run_acceptance_suite(cfg, verbose ? &std::cerr : nullptr);
    int bad = 0;
    for (const auto& r : results)
      if (!r.pass) ++bad;
    if (failures) *failures = bad;
    if (json_out) *json_out = dup_string(suite_to_json(results));
  });
}

}  // extern "C"
