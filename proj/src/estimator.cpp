#include "frobdens/estimator.hpp"

#include "frobdens/error.hpp"
#include "frobdens/primes.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

namespace frobdens {

namespace {

/// Neumaier's variant of Kahan summation.
struct CompensatedSum {
  double sum = 0;
  double carry = 0;

  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      carry += (sum - t) + v;
    else
      carry += (v - t) + sum;
    sum = t;
  }
  void add(const CompensatedSum& other) {
    add(other.sum);
    add(other.carry);
  }
  double value() const { return sum + carry; }
};

struct Tally {
  std::uint64_t numer = 0;
  std::uint64_t denom = 0;
  // Counts restricted to primes above the burn-in.
  std::uint64_t w_numer = 0;
  std::uint64_t w_denom = 0;
  std::vector<CompensatedSum> numer_w;
  std::vector<CompensatedSum> denom_w;

  explicit Tally(std::size_t n_exponents = 0) : numer_w(n_exponents), denom_w(n_exponents) {}

  void absorb(const Tally& t) {
    numer += t.numer;
    denom += t.denom;
    w_numer += t.w_numer;
    w_denom += t.w_denom;
    for (std::size_t k = 0; k < numer_w.size(); ++k) {
      numer_w[k].add(t.numer_w[k]);
      denom_w[k].add(t.denom_w[k]);
    }
  }
};

/// Windows covering [2, cutoffs.back()], cut at every cutoff and at multiples of span.
struct WindowPlan {
  std::vector<PrimeWindow> windows;
  std::vector<std::size_t> cutoff_of;  // index into cutoffs of the first cutoff >= window.hi
};

WindowPlan plan_windows(const std::vector<std::uint64_t>& cutoffs, std::uint64_t span) {
  WindowPlan plan;
  std::uint64_t lo = 2;
  for (std::size_t c = 0; c < cutoffs.size(); ++c) {
    for (const auto& w : split_window(PrimeWindow{lo, cutoffs[c]}, span)) {
      plan.windows.push_back(w);
      plan.cutoff_of.push_back(c);
    }
    lo = std::max(lo, cutoffs[c] + 1);
  }
  return plan;
}

class PrimeSource {
 public:
  PrimeSource(std::uint64_t hi, const EstimatorOptions& opts) {
    if (hi > kMaxPrimeBound) throw Error(ErrorCode::BoundTooLarge, "prime bound exceeds 10^9");
    if (opts.cache_dir) all_ = sieve_cached(hi, *opts.cache_dir);
  }

  std::vector<std::uint64_t> primes(PrimeWindow w) const {
    if (!all_) return primes_in(w);
    auto first = std::lower_bound(all_->begin(), all_->end(), w.lo);
    auto last = std::upper_bound(first, all_->end(), w.hi);
    return {first, last};
  }

 private:
  std::optional<std::vector<std::uint64_t>> all_;
};

unsigned resolve_threads(unsigned requested) {
  if (requested) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

/// Evaluates f on every window, in parallel, returning results in window order.
template <class T, class F>
std::vector<T> map_windows(const std::vector<PrimeWindow>& windows, unsigned threads, F f) {
  std::vector<T> out(windows.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= windows.size()) return;
      try {
        out[i] = f(windows[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = windows.size();
        return;
      }
    }
  };
  const unsigned n = std::min<std::size_t>(resolve_threads(threads), std::max<std::size_t>(windows.size(), 1));
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<std::uint64_t> normalized_cutoffs(std::vector<std::uint64_t> cutoffs) {
  for (auto X : cutoffs)
    if (X < 2) throw Error(ErrorCode::BadInput, "prime cutoff must be at least 2");
  std::sort(cutoffs.begin(), cutoffs.end());
  cutoffs.erase(std::unique(cutoffs.begin(), cutoffs.end()), cutoffs.end());
  return cutoffs;
}

/// Cumulative tallies of numer cap denom and denom at each cutoff, with
/// weighted sums over p > burn_in for every exponent.
std::vector<Tally> evaluate(const FieldScenario& sc, const SetExprPtr& numer, const SetExprPtr& denom,
                            const std::vector<double>& exponents, const std::vector<std::uint64_t>& cutoffs,
                            const EstimatorOptions& opts, std::uint64_t burn_in = 0) {
  const auto plan = plan_windows(cutoffs, opts.window_span);
  const PrimeSource source(cutoffs.back(), opts);
  auto per_window = map_windows<Tally>(plan.windows, opts.threads, [&](PrimeWindow w) {
    Tally t(exponents.size());
    std::vector<double> terms(exponents.size());
    for (auto p : source.primes(w)) {
      if (sc.is_ramified(p)) continue;
      const PrimeRecord rec = sc.record(p);
      const bool weighted = p > burn_in;
      bool have_terms = false;
      for (const auto& fc : rec.fibers) {
        if (!denom->contains(sc, p, fc.h_class)) continue;
        if (weighted && !have_terms) {
          const double logp = std::log(static_cast<double>(p)) * rec.d;
          for (std::size_t k = 0; k < exponents.size(); ++k) terms[k] = std::exp(-exponents[k] * logp);
          have_terms = true;
        }
        const bool in_numer = numer->contains(sc, p, fc.h_class);
        t.denom += fc.count;
        if (in_numer) t.numer += fc.count;
        if (!weighted) continue;
        t.w_denom += fc.count;
        if (in_numer) t.w_numer += fc.count;
        for (std::size_t k = 0; k < exponents.size(); ++k) {
          const double v = fc.count * terms[k];
          t.denom_w[k].add(v);
          if (in_numer) t.numer_w[k].add(v);
        }
      }
    }
    return t;
  });
  std::vector<Tally> out;
  Tally running(exponents.size());
  std::size_t w = 0;
  for (std::size_t c = 0; c < cutoffs.size(); ++c) {
    for (; w < plan.windows.size() && plan.cutoff_of[w] == c; ++w) running.absorb(per_window[w]);
    out.push_back(running);
  }
  return out;
}

int order_of(const FieldScenario& sc, ElemId x) {
  sc.galois_k()->require(x);
  return static_cast<int>(sc.galois_k()->order(x));
}

void check_abscissa(double s, int d) {
  if (!(s > 1.0 / d))
    throw Error(ErrorCode::SBelowAbscissa, "s = " + std::to_string(s) + " is not above 1/" + std::to_string(d));
}

DensityEstimate make_estimate(EstimatorKind kind, double s, std::uint64_t X, std::uint64_t numer,
                              std::uint64_t denom, double value) {
  DensityEstimate e;
  e.estimator = kind;
  e.s = s;
  e.X = X;
  e.numer_count = numer;
  e.denom_count = denom;
  e.value = value;
  e.stderr_proxy = denom ? std::sqrt(std::max(0.0, value * (1 - value)) / static_cast<double>(denom)) : 0;
  return e;
}

std::string fmt_double(double v) {
  if (std::isnan(v)) return "-";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

std::string_view to_string(EstimatorKind k) { return k == EstimatorKind::Weighted ? "weighted" : "counting"; }

void validate_schedule(const Schedule& schedule) {
  if (schedule.empty()) throw Error(ErrorCode::BadInput, "schedule is empty");
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (!(schedule[i].epsilon > 0)) throw Error(ErrorCode::BadInput, "schedule epsilon must be positive");
    if (schedule[i].X < 2) throw Error(ErrorCode::BadInput, "schedule cutoff must be at least 2");
    if (i && !(schedule[i].epsilon < schedule[i - 1].epsilon))
      throw Error(ErrorCode::BadInput, "schedule epsilon must strictly decrease");
    if (i && !(schedule[i].X > schedule[i - 1].X))
      throw Error(ErrorCode::BadInput, "schedule cutoffs must strictly increase");
  }
}

Schedule default_schedule(std::uint64_t X) {
  const std::pair<double, std::uint64_t> steps[] = {{0.2, X / 100}, {0.1, X / 10}, {0.05, X / 2}, {0.025, X}};
  Schedule out;
  for (const auto& [eps, cut] : steps) {
    if (cut < 2 || (!out.empty() && cut <= out.back().X)) continue;
    out.push_back(ScheduleEntry{eps, cut});
  }
  if (out.empty()) throw Error(ErrorCode::BadInput, "prime cutoff must be at least 2");
  return out;
}

std::uint64_t default_burn_in(const Schedule& schedule) {
  validate_schedule(schedule);
  return schedule.front().X / 10;
}

EstimatorOptions options_from_env(unsigned threads) {
  EstimatorOptions opts;
  opts.threads = threads;
  if (const char* dir = std::getenv("FROBDENS_CACHE_DIR"); dir && *dir) opts.cache_dir = std::filesystem::path(dir);
  return opts;
}

double weighted_partial(const FieldScenario& sc, const SetExprPtr& s_set, ElemId x, double s, std::uint64_t X,
                        const EstimatorOptions& opts) {
  check_abscissa(s, order_of(sc, x));
  const auto tallies = evaluate(sc, s_set, SetExpr::frobenius_is(x), {s}, normalized_cutoffs({X}), opts);
  return tallies.back().numer_w[0].value();
}

namespace {

struct WeightedRun {
  std::vector<DensityEstimate> weighted;
  /// Counting estimate at the last cutoff of the schedule, from the same pass.
  DensityEstimate counting;
};

WeightedRun run_weighted(const FieldScenario& sc, const SetExprPtr& numer, const SetExprPtr& denom, int d,
                         const Schedule& schedule, const EstimatorOptions& opts) {
  validate_schedule(schedule);
  if (d < 1) throw Error(ErrorCode::BadInput, "order must be positive");
  std::vector<double> exponents;
  std::vector<std::uint64_t> cutoffs;
  for (const auto& e : schedule) {
    exponents.push_back(1.0 / d + e.epsilon);
    cutoffs.push_back(e.X);
  }
  const std::uint64_t burn_in = opts.burn_in ? *opts.burn_in : default_burn_in(schedule);
  const auto tallies = evaluate(sc, numer, denom, exponents, cutoffs, opts, burn_in);
  WeightedRun run;
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    const auto& t = tallies[k];
    if (t.w_denom == 0)
      throw Error(ErrorCode::EmptyDenominator, "no primes in the denominator in (" + std::to_string(burn_in) + ", " +
                                                   std::to_string(cutoffs[k]) + "]");
    const double value = t.numer_w[k].value() / t.denom_w[k].value();
    run.weighted.push_back(make_estimate(EstimatorKind::Weighted, exponents[k], cutoffs[k], t.w_numer, t.w_denom, value));
  }
  const auto& last = tallies.back();
  run.counting = make_estimate(EstimatorKind::Counting, std::numeric_limits<double>::quiet_NaN(), cutoffs.back(),
                               last.numer, last.denom,
                               static_cast<double>(last.numer) / static_cast<double>(last.denom));
  return run;
}

}  // namespace

std::vector<DensityEstimate> weighted_ratio(const FieldScenario& sc, const SetExprPtr& numer,
                                            const SetExprPtr& denom, int d, const Schedule& schedule,
                                            const EstimatorOptions& opts) {
  return run_weighted(sc, numer, denom, d, schedule, opts).weighted;
}

DensityEstimate counting_ratio(const FieldScenario& sc, const SetExprPtr& numer, const SetExprPtr& denom,
                               std::uint64_t X, const EstimatorOptions& opts) {
  const auto tallies = evaluate(sc, numer, denom, {}, normalized_cutoffs({X}), opts);
  const auto& t = tallies.back();
  if (t.denom == 0) throw Error(ErrorCode::EmptyDenominator, "no primes in the denominator up to " + std::to_string(X));
  return make_estimate(EstimatorKind::Counting, std::numeric_limits<double>::quiet_NaN(), X, t.numer, t.denom,
                       static_cast<double>(t.numer) / static_cast<double>(t.denom));
}

std::vector<DensityEstimate> delta_x_weighted(const FieldScenario& sc, const SetExprPtr& s_set, ElemId x,
                                              const Schedule& schedule, const EstimatorOptions& opts) {
  return weighted_ratio(sc, s_set, SetExpr::frobenius_is(x), order_of(sc, x), schedule, opts);
}

DensityEstimate delta_x_counting(const FieldScenario& sc, const SetExprPtr& s_set, ElemId x, std::uint64_t X,
                                 const EstimatorOptions& opts) {
  order_of(sc, x);
  return counting_ratio(sc, s_set, SetExpr::frobenius_is(x), X, opts);
}

std::vector<double> divergence_probe(const FieldScenario& sc, ElemId x, const std::vector<std::uint64_t>& cutoffs,
                                     const EstimatorOptions& opts) {
  if (cutoffs.empty()) return {};
  const int d = order_of(sc, x);
  const auto sorted = normalized_cutoffs(cutoffs);
  const auto px = SetExpr::frobenius_is(x);
  const auto tallies = evaluate(sc, px, px, {1.0 / d}, sorted, opts);
  std::vector<double> out;
  for (auto X : cutoffs) {
    const auto k = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), X) - sorted.begin());
    out.push_back(tallies[k].denom_w[0].value());
  }
  return out;
}

std::vector<LProbeRow> l_product_probe(const FieldScenario& sc, const CharacterFn& chi, ElemId x,
                                       const std::vector<double>& s_list, std::uint64_t X,
                                       const EstimatorOptions& opts) {
  if (chi.group != sc.galois_k()) throw Error(ErrorCode::GroupMismatch, "chi must be a function on Gal(K/Q)");
  const int d = order_of(sc, x);
  for (double s : s_list) check_abscissa(s, d);
  if (X < 2) throw Error(ErrorCode::BadInput, "prime cutoff must be at least 2");
  struct Partial {
    std::vector<CompensatedSum> re, im;
  };
  const auto plan = plan_windows({X}, opts.window_span);
  const PrimeSource source(X, opts);
  auto per_window = map_windows<Partial>(plan.windows, opts.threads, [&](PrimeWindow w) {
    Partial part{std::vector<CompensatedSum>(s_list.size()), std::vector<CompensatedSum>(s_list.size())};
    for (auto p : source.primes(w)) {
      if (sc.is_ramified(p)) continue;
      const PrimeRecord rec = sc.record(p);
      if (rec.frob_k != x) continue;
      const std::complex<double> c = chi.values[rec.frob_k];
      const double logp = std::log(static_cast<double>(p)) * rec.d;
      for (std::size_t k = 0; k < s_list.size(); ++k) {
        const std::complex<double> term = -std::log(1.0 - c * std::exp(-s_list[k] * logp));
        part.re[k].add(rec.g * term.real());
        part.im[k].add(rec.g * term.imag());
      }
    }
    return part;
  });
  std::vector<LProbeRow> rows;
  for (std::size_t k = 0; k < s_list.size(); ++k) {
    CompensatedSum re, im;
    for (const auto& part : per_window) {
      re.add(part.re[k]);
      im.add(part.im[k]);
    }
    const double s = s_list[k];
    const double model = (std::log(1.0 / (s - 1.0 / d)) - std::log(static_cast<double>(d))) / d;
    rows.push_back(LProbeRow{s, re.value(), im.value(), model, re.value() - model});
  }
  return rows;
}

VerifyReport verify(const FieldScenario& sc, const SetExprPtr& s_set, ElemId x, double expected, double tolerance,
                    std::uint64_t X, const std::optional<Schedule>& schedule, const EstimatorOptions& opts) {
  if (!(tolerance >= 0)) throw Error(ErrorCode::BadInput, "tolerance must be non-negative");
  VerifyReport r;
  r.expected = expected;
  r.tolerance = tolerance;
  const Schedule sched = schedule ? *schedule : default_schedule(X);
  auto run = run_weighted(sc, s_set, SetExpr::frobenius_is(x), order_of(sc, x), sched, opts);
  r.weighted = std::move(run.weighted);
  r.counting = sched.back().X == X ? run.counting : delta_x_counting(sc, s_set, x, X, opts);
  r.pass = std::abs(r.counting.value - expected) <= tolerance &&
           std::abs(r.weighted.back().value - expected) <= 2 * tolerance;
  return r;
}

std::string estimates_tsv(const std::vector<DensityEstimate>& rows, std::optional<double> expected,
                          std::optional<double> tolerance) {
  std::string out = "estimator\ts\tX\tnumer\tdenom\tvalue\texpected\tabs_err\tpass\n";
  for (const auto& e : rows) {
    out += std::string(to_string(e.estimator)) + "\t" + fmt_double(e.s) + "\t" + std::to_string(e.X) + "\t" +
           std::to_string(e.numer_count) + "\t" + std::to_string(e.denom_count) + "\t" + fmt_double(e.value) + "\t";
    if (expected) {
      const double err = std::abs(e.value - *expected);
      const double tol = tolerance ? *tolerance * (e.estimator == EstimatorKind::Weighted ? 2 : 1) : 0;
      out += fmt_double(*expected) + "\t" + fmt_double(err) + "\t" + (tolerance ? (err <= tol ? "1" : "0") : "-");
    } else {
      out += "-\t-\t-";
    }
    out += "\n";
  }
  return out;
}

std::string verify_tsv(const VerifyReport& report) {
  std::vector<DensityEstimate> rows = report.weighted;
  rows.push_back(report.counting);
  return estimates_tsv(rows, report.expected, report.tolerance);
}

}  // namespace frobdens
