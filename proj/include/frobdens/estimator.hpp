#pragma once

#include "frobdens/field.hpp"
#include "frobdens/group.hpp"
#include "frobdens/rational.hpp"
#include "frobdens/set_expr.hpp"

#include <complex>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace frobdens {

enum class EstimatorKind { Weighted, Counting };

std::string_view to_string(EstimatorKind k);

struct DensityEstimate {
  double value = 0;
  EstimatorKind estimator = EstimatorKind::Counting;
  /// Exponent of the Dirichlet-type sum; NaN for the counting estimator.
  double s = 0;
  std::uint64_t X = 0;
  std::uint64_t numer_count = 0;
  std::uint64_t denom_count = 0;
  /// sqrt(v (1 - v) / denom_count).
  double stderr_proxy = 0;
};

struct ScheduleEntry {
  double epsilon;
  std::uint64_t X;
};

/// Epsilon strictly decreasing and positive, X strictly increasing and >= 2.
using Schedule = std::vector<ScheduleEntry>;

/// Throws BadInput when the schedule is malformed.
void validate_schedule(const Schedule& schedule);

/// epsilon in {0.2, 0.1, 0.05, 0.025} paired with X/100, X/10, X/2, X
/// (cutoffs below 2 are dropped). At X = 10^7 this is 10^5, 10^6, 5*10^6, 10^7.
Schedule default_schedule(std::uint64_t X);

struct EstimatorOptions {
  /// 0 means std::thread::hardware_concurrency().
  unsigned threads = 0;
  /// When set, the full prime list is read from (or written to) this directory.
  std::optional<std::filesystem::path> cache_dir;
  std::uint64_t window_span = std::uint64_t{1} << 18;
  /// Weighted ratios skip primes p <= burn_in (a finite modification, so the
  /// limit is unchanged). nullopt means default_burn_in(schedule); 0 keeps
  /// every prime.
  std::optional<std::uint64_t> burn_in;
};

/// One tenth of the first cutoff of the schedule.
std::uint64_t default_burn_in(const Schedule& schedule);

/// Reads FROBDENS_CACHE_DIR into options.cache_dir.
EstimatorOptions options_from_env(unsigned threads = 0);

/// Sum over primes of K in S cap P^x lying over p <= X of Np^{-s}.
double weighted_partial(const FieldScenario& sc, const SetExprPtr& s_set, ElemId x, double s, std::uint64_t X,
                        const EstimatorOptions& opts = {});

/// Ratio of weighted sums at s = 1/d + epsilon for each schedule entry, over
/// primes above the burn-in. numer_count and denom_count count the primes of
/// K entering the weighted sums.
std::vector<DensityEstimate> delta_x_weighted(const FieldScenario& sc, const SetExprPtr& s_set, ElemId x,
                                              const Schedule& schedule, const EstimatorOptions& opts = {});

/// Fraction of primes of K in P^x over p <= X that lie in S, counted with multiplicity.
DensityEstimate delta_x_counting(const FieldScenario& sc, const SetExprPtr& s_set, ElemId x, std::uint64_t X,
                                 const EstimatorOptions& opts = {});

/// Same two estimators with an explicit denominator set; the numerator is
/// intersected with it. `d` fixes the abscissa 1/d.
std::vector<DensityEstimate> weighted_ratio(const FieldScenario& sc, const SetExprPtr& numer,
                                            const SetExprPtr& denom, int d, const Schedule& schedule,
                                            const EstimatorOptions& opts = {});
DensityEstimate counting_ratio(const FieldScenario& sc, const SetExprPtr& numer, const SetExprPtr& denom,
                               std::uint64_t X, const EstimatorOptions& opts = {});

/// weighted_partial(P^x) at s = 1/d for each cutoff in `cutoffs` (sorted).
std::vector<double> divergence_probe(const FieldScenario& sc, ElemId x, const std::vector<std::uint64_t>& cutoffs,
                                     const EstimatorOptions& opts = {});

struct LProbeRow {
  double s;
  /// log |prod (1 - chi(p) Np^{-s})^{-1}| and its argument.
  double log_abs;
  double arg;
  /// (1/d) (log(1/(s - 1/d)) - log d).
  double model;
  double difference;
};

/// Truncated Euler product over P^x, p <= X, with chi a function on Gal(K/Q)
/// evaluated at the Frobenius of p.
std::vector<LProbeRow> l_product_probe(const FieldScenario& sc, const CharacterFn& chi, ElemId x,
                                       const std::vector<double>& s_list, std::uint64_t X,
                                       const EstimatorOptions& opts = {});

struct VerifyReport {
  bool pass = false;
  double expected = 0;
  double tolerance = 0;
  DensityEstimate counting;
  std::vector<DensityEstimate> weighted;
};

/// Passes iff |counting - expected| <= tol and the last weighted entry is
/// within 2 tol.
VerifyReport verify(const FieldScenario& sc, const SetExprPtr& s_set, ElemId x, double expected, double tolerance,
                    std::uint64_t X, const std::optional<Schedule>& schedule = {},
                    const EstimatorOptions& opts = {});

/// Header plus one row per estimate.
std::string estimates_tsv(const std::vector<DensityEstimate>& rows, std::optional<double> expected,
                          std::optional<double> tolerance);
std::string verify_tsv(const VerifyReport& report);

}  // namespace frobdens
