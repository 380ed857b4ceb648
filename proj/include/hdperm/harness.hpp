#pragma once

#include "hdperm/chains.hpp"
#include "hdperm/construct.hpp"
#include "hdperm/sample.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hdp {

// ------------------------------------------------------ diagonal estimator

struct DiagonalEstimate {
    double y = 0.0;                // n^(-k/(k+1)) * sum(z)
    int m = 0;                     // subcube side, round(C * n^(1/(k+1)))
    std::vector<std::uint8_t> z;   // z[i] = 1 iff the support meets subcube i+1
    int occupied() const;
};

// Diagonal-subcube occupancy: subcube i is [(i-1)m+1, im]^(k+1) for
// 1 <= i <= floor(n/m). Throws if m falls outside [1, n].
DiagonalEstimate compute_yn(const PermutationArray& p, double c);

// Default C maximizing the expectation lower bound: k^(1/(k+1)).
double default_subcube_constant(int k);

// ----------------------------------------------------------- Chernoff bound

// D(beta || alpha) with the 0 ln 0 = 0 convention; domain 0 <= alpha <= beta <= 1.
double relative_entropy(double beta, double alpha);

// exp(-N * D(beta || alpha)), the tail envelope for sums of Boolean variables
// whose joint products are dominated by alpha^|S|.
double chernoff_bound(double n_trials, double alpha, double beta);

// ------------------------------------------------------------------ records

struct ExperimentRecord {
    int k = 0;
    int n = 0;
    int trial = 0;
    std::uint64_t seed = 0;
    std::string sampler;            // "jm", "isotopy", or a construction variant
    std::string order_type_policy;  // "all-ones" or "max"
    int h = 0;
    std::optional<double> y;
    std::optional<double> c;
    double wall_ms = 0.0;
};

inline constexpr const char* kRecordsSchema = "hdperm-records v1";
inline constexpr const char* kRecordsHeader = "k,n,trial,seed,sampler,order_type_policy,H,Y,C,wall_ms";

void write_records_csv(std::ostream& out, std::span<const ExperimentRecord> records, bool with_header);
void append_records_csv(const std::string& path, std::span<const ExperimentRecord> records);

// ------------------------------------------------------------- experiments

enum class OrderPolicy {
    Auto,          // max over order types for k = 1, all-ones otherwise
    AllOnes,
    MaxOverTypes,
};

struct RunConfig {
    std::uint64_t seed = 0;
    std::int64_t burn_in = -1;   // negative: sampler default
    std::int64_t thinning = -1;  // negative: sampler default
    OrderPolicy policy = OrderPolicy::Auto;
};

// Samples one trial's permutation: Jacobson-Matthews for k = 2, isotopy
// randomization of the cyclic base otherwise (exactly uniform for k = 1).
PermutationArray draw_sample(int k, int n, std::uint64_t seed, const RunConfig& cfg);
std::string sampler_name(int k);

// Burn-in used by the experiment drivers when the config does not override
// it, in watched-chain steps. One watched step runs the raw chain through
// one improper excursion (about n+1 raw moves), so this matches the work of
// the classic 10 n^3 raw-step heuristic.
std::int64_t experiment_burn_in(int n);

// least-squares slope of y against x
double regression_slope(std::span<const double> x, std::span<const double> y);

struct ScalingSizeSummary {
    int n = 0;
    int trials = 0;
    std::int64_t burn_in = 0;  // watched steps per independent chain (jm only)
    double mean_h = 0.0;
    double mean_ratio = 0.0;  // H * n^(-k/(k+1))
    double min_ratio = 0.0;
    double max_ratio = 0.0;
};

struct ScalingResult {
    std::vector<ExperimentRecord> records;
    std::vector<ScalingSizeSummary> sizes;
    double slope = 0.0;  // log mean H against log n
};

ScalingResult scaling_experiment(int k, std::span<const int> n_list, int trials, const RunConfig& cfg);

struct WorstcaseRow {
    int n = 0;
    std::string variant;    // "prime" or "coprime"
    int modulus_step = 0;
    int max_len = 0;
    int floor_bound = 0;    // floor(sqrt(n / 3(k-1))) for k >= 2, ceil(sqrt(n)) for k = 1
    double envelope = 0.0;  // 2 sqrt(n (k+1)) + 3
    LengthProfile profile;
};

std::vector<WorstcaseRow> worstcase_experiment(int k, std::span<const int> n_list);
std::vector<ExperimentRecord> worstcase_records(int k, std::span<const WorstcaseRow> rows);

struct AsymmetricCase {
    std::string source;  // which array was measured
    int len_increasing = 0;   // ell under <_1 (all coordinates increasing)
    int len_last_decreasing = 0;  // ell under <_2 (last coordinate decreasing)
};

struct AsymmetricReport {
    int k = 0, n = 0, r = 0, s = 0;
    int modulus_step = 0;
    bool forcing_applicable = false;    // rs < n / 3(k-1)
    bool tightness_applicable = false;  // construction hypothesis holds
    std::vector<AsymmetricCase> forcing_cases;
    AsymmetricCase construction;
    bool forcing_ok = true;    // every case reaches r under <_1 or s under <_2
    bool tightness_ok = true;  // construction stays below r and s
};

// Forcing direction measured on `samples` random draws plus the balanced
// construction; tightness direction on the asymmetric construction itself.
AsymmetricReport asymmetric_experiment(int k, int n, int r, int s, int samples, const RunConfig& cfg);

struct YnTrial {
    ExperimentRecord record;
    int z_sum = 0;
    bool chain_ok = false;  // H >= sum of Z_i
};

struct YnSizeSummary {
    int n = 0;
    int trials = 0;
    std::int64_t burn_in = 0;  // watched steps per independent chain
    double mean_y = 0.0;
    double max_y = 0.0;
    double cap = 0.0;  // floor(n/m) * n^(-k/(k+1))
    bool chain_ok_all = true;
};

struct YnResult {
    double c = 0.0;
    std::vector<YnTrial> trials;
    std::vector<YnSizeSummary> sizes;
};

YnResult yn_experiment(int k, std::span<const int> n_list, double c, int trials, const RunConfig& cfg);

}  // namespace hdp
