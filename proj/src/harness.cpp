#include "hdperm/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace hdp {

namespace {

double wall_ms_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

std::uint64_t trial_stream_id(int n, int trial) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(n)) << 32) |
           static_cast<std::uint32_t>(trial);
}

int measure_h(const PermutationArray& p, OrderPolicy policy, std::string& policy_name) {
    const bool use_max = policy == OrderPolicy::MaxOverTypes ||
                         (policy == OrderPolicy::Auto && p.k() == 1);
    if (use_max) {
        policy_name = "max";
        return length_profile(p).max_length();
    }
    policy_name = "all-ones";
    return longest_monotone(p, OrderType::ones(p.k() + 1)).length;
}

}  // namespace

// ------------------------------------------------------ diagonal estimator

int DiagonalEstimate::occupied() const {
    int total = 0;
    for (std::uint8_t b : z) total += b;
    return total;
}

double default_subcube_constant(int k) {
    return std::pow(static_cast<double>(k), 1.0 / (k + 1));
}

DiagonalEstimate compute_yn(const PermutationArray& p, double c) {
    const int k = p.k();
    const int n = p.n();
    const int m = static_cast<int>(std::llround(c * std::pow(static_cast<double>(n), 1.0 / (k + 1))));
    if (m < 1) throw std::invalid_argument("subcube side m rounds to zero");
    if (m > n) throw std::invalid_argument("subcube side m exceeds n");

    DiagonalEstimate est;
    est.m = m;
    const int blocks = n / m;
    est.z.assign(static_cast<std::size_t>(blocks), 0);

    std::vector<Coord> pos(static_cast<std::size_t>(k));
    for (int b = 0; b < blocks; ++b) {
        const Coord lo = static_cast<Coord>(b) * m + 1;
        const Coord hi = static_cast<Coord>(b + 1) * m;
        std::fill(pos.begin(), pos.end(), lo);
        bool hit = false;
        for (;;) {
            const Coord v = p(pos);
            if (v >= lo && v <= hi) {
                hit = true;
                break;
            }
            int i = k - 1;
            for (; i >= 0; --i) {
                if (++pos[static_cast<std::size_t>(i)] <= hi) break;
                pos[static_cast<std::size_t>(i)] = lo;
            }
            if (i < 0) break;
        }
        est.z[static_cast<std::size_t>(b)] = hit ? 1 : 0;
    }
    est.y = std::pow(static_cast<double>(n), -static_cast<double>(k) / (k + 1)) * est.occupied();
    return est;
}

// ----------------------------------------------------------- Chernoff bound

double relative_entropy(double beta, double alpha) {
    if (!(alpha >= 0.0) || !(beta >= alpha) || !(beta <= 1.0))
        throw std::domain_error("relative_entropy requires 0 <= alpha <= beta <= 1");
    double d = 0.0;
    if (beta > 0.0) {
        if (alpha == 0.0) return std::numeric_limits<double>::infinity();
        d += beta * std::log(beta / alpha);
    }
    if (beta < 1.0) {
        if (alpha == 1.0) return std::numeric_limits<double>::infinity();  // unreachable: alpha <= beta < 1
        d += (1.0 - beta) * std::log((1.0 - beta) / (1.0 - alpha));
    }
    return d;
}

double chernoff_bound(double n_trials, double alpha, double beta) {
    if (n_trials < 0.0) throw std::domain_error("chernoff_bound requires N >= 0");
    const double d = relative_entropy(beta, alpha);
    if (std::isinf(d)) return 0.0;
    return std::exp(-n_trials * d);
}

// ------------------------------------------------------------------ records

void write_records_csv(std::ostream& out, std::span<const ExperimentRecord> records, bool with_header) {
    if (with_header) out << "# " << kRecordsSchema << "\n" << kRecordsHeader << "\n";
    char buf[64];
    for (const ExperimentRecord& r : records) {
        out << r.k << ',' << r.n << ',' << r.trial << ',' << r.seed << ',' << r.sampler << ','
            << r.order_type_policy << ',' << r.h << ',';
        if (r.y) {
            std::snprintf(buf, sizeof buf, "%.6f", *r.y);
            out << buf;
        }
        out << ',';
        if (r.c) {
            std::snprintf(buf, sizeof buf, "%.6f", *r.c);
            out << buf;
        }
        std::snprintf(buf, sizeof buf, "%.3f", r.wall_ms);
        out << ',' << buf << '\n';
    }
}

void append_records_csv(const std::string& path, std::span<const ExperimentRecord> records) {
    const bool fresh = !std::ifstream(path).good();
    std::ofstream out(path, std::ios::app);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for appending");
    write_records_csv(out, records, fresh);
}

// ------------------------------------------------------------- experiments

std::string sampler_name(int k) {
    return k == 2 ? "jm" : "isotopy";
}

std::int64_t experiment_burn_in(int n) {
    return 10LL * n * n + 1000;
}

PermutationArray draw_sample(int k, int n, std::uint64_t seed, const RunConfig& cfg) {
    if (k == 2) {
        SamplerConfig sc;
        sc.seed = seed;
        sc.burn_in = cfg.burn_in >= 0 ? cfg.burn_in : experiment_burn_in(n);
        sc.thinning = cfg.thinning;
        return sample_latin(n, sc);
    }
    SplitRng rng(seed);
    return sample_isotopy(cyclic_base(n, k), rng);
}

double regression_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("regression needs >= 2 points");
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size());
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        num += (x[i] - mx) * (y[i] - my);
        den += (x[i] - mx) * (x[i] - mx);
    }
    return num / den;
}

ScalingResult scaling_experiment(int k, std::span<const int> n_list, int trials, const RunConfig& cfg) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    const SplitRng master(cfg.seed);
    const double exponent = static_cast<double>(k) / (k + 1);

    ScalingResult result;
    std::vector<double> log_n, log_mean_h;
    for (int n : n_list) {
        ScalingSizeSummary size;
        size.n = n;
        size.trials = trials;
        size.burn_in = k == 2 ? (cfg.burn_in >= 0 ? cfg.burn_in : experiment_burn_in(n)) : 0;
        double sum_h = 0.0, sum_ratio = 0.0;
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (int t = 0; t < trials; ++t) {
            const auto start = std::chrono::steady_clock::now();
            const std::uint64_t seed = master.stream(trial_stream_id(n, t)).seed();
            const PermutationArray p = draw_sample(k, n, seed, cfg);
            ExperimentRecord rec;
            rec.k = k;
            rec.n = n;
            rec.trial = t;
            rec.seed = seed;
            rec.sampler = sampler_name(k);
            rec.h = measure_h(p, cfg.policy, rec.order_type_policy);
            rec.wall_ms = wall_ms_since(start);
            const double ratio = rec.h * std::pow(static_cast<double>(n), -exponent);
            sum_h += rec.h;
            sum_ratio += ratio;
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
            result.records.push_back(std::move(rec));
        }
        size.mean_h = sum_h / trials;
        size.mean_ratio = sum_ratio / trials;
        size.min_ratio = lo;
        size.max_ratio = hi;
        result.sizes.push_back(size);
        log_n.push_back(std::log(static_cast<double>(n)));
        log_mean_h.push_back(std::log(size.mean_h));
    }
    result.slope = n_list.size() >= 2 ? regression_slope(log_n, log_mean_h)
                                      : std::numeric_limits<double>::quiet_NaN();
    return result;
}

std::vector<WorstcaseRow> worstcase_experiment(int k, std::span<const int> n_list) {
    std::vector<WorstcaseRow> rows;
    for (int n : n_list) {
        PermutationArray p = [&] {
            if (is_prime(n)) return extremal_prime(n, k);
            return extremal_coprime(n, k).array;
        }();
        WorstcaseRow row{n,
                         is_prime(n) ? "prime" : "coprime",
                         is_prime(n) ? balanced_modulus_step(n, k) : extremal_coprime(n, k).modulus_step,
                         0,
                         0,
                         0.0,
                         length_profile(p)};
        row.max_len = row.profile.max_length();
        if (k >= 2) {
            const int q = n / (3 * (k - 1));
            int f = 0;
            while ((f + 1) * (f + 1) <= q) ++f;
            row.floor_bound = f;
        } else {
            row.floor_bound = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
        }
        row.envelope = 2.0 * std::sqrt(static_cast<double>(n) * (k + 1)) + 3.0;
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<ExperimentRecord> worstcase_records(int k, std::span<const WorstcaseRow> rows) {
    std::vector<ExperimentRecord> records;
    for (const WorstcaseRow& row : rows) {
        ExperimentRecord rec;
        rec.k = k;
        rec.n = row.n;
        rec.trial = 0;
        rec.seed = 0;
        rec.sampler = row.variant;
        rec.order_type_policy = "max";
        rec.h = row.max_len;
        records.push_back(std::move(rec));
    }
    return records;
}

AsymmetricReport asymmetric_experiment(int k, int n, int r, int s, int samples, const RunConfig& cfg) {
    AsymmetricReport report;
    report.k = k;
    report.n = n;
    report.r = r;
    report.s = s;
    report.forcing_applicable =
        k >= 2 && static_cast<long long>(r) * s * 3 * (k - 1) < static_cast<long long>(n);

    const OrderType inc = OrderType::ones(k + 1);
    const OrderType dec_last = OrderType::ones_except_last(k + 1);
    const auto measure = [&](const PermutationArray& p, const std::string& source) {
        AsymmetricCase c;
        c.source = source;
        c.len_increasing = longest_monotone(p, inc).length;
        c.len_last_decreasing = longest_monotone(p, dec_last).length;
        return c;
    };

    const SplitRng master(cfg.seed);
    for (int t = 0; t < samples; ++t) {
        const std::uint64_t seed = master.stream(trial_stream_id(n, t)).seed();
        report.forcing_cases.push_back(
            measure(draw_sample(k, n, seed, cfg), sampler_name(k) + "#" + std::to_string(t)));
    }
    if (n >= k + 1) {
        const CoprimeConstruction balanced = extremal_coprime(n, k);
        report.forcing_cases.push_back(measure(balanced.array, "coprime"));
    }
    for (const AsymmetricCase& c : report.forcing_cases)
        if (c.len_increasing < r && c.len_last_decreasing < s) report.forcing_ok = false;

    if (s >= 2 * k) {
        const AsymmetricConstruction asym = extremal_asymmetric(n, k, r, s);
        report.modulus_step = asym.modulus_step;
        report.tightness_applicable = asym.hypothesis_holds;
        report.construction = measure(asym.array, "asymmetric");
        report.tightness_ok =
            report.construction.len_increasing < r && report.construction.len_last_decreasing < s;
    } else {
        // no construction possible (the modulus step would be 0); only the
        // forcing direction is reported
        report.construction.source = "(none)";
        report.tightness_applicable = false;
    }
    return report;
}

YnResult yn_experiment(int k, std::span<const int> n_list, double c, int trials, const RunConfig& cfg) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    const SplitRng master(cfg.seed);
    const double exponent = static_cast<double>(k) / (k + 1);

    YnResult result;
    result.c = c;
    for (int n : n_list) {
        YnSizeSummary size;
        size.n = n;
        size.trials = trials;
        size.burn_in = k == 2 ? (cfg.burn_in >= 0 ? cfg.burn_in : experiment_burn_in(n)) : 0;
        double sum_y = 0.0, max_y = 0.0;
        int m_used = 0;
        for (int t = 0; t < trials; ++t) {
            const auto start = std::chrono::steady_clock::now();
            const std::uint64_t seed = master.stream(trial_stream_id(n, t)).seed();
            const PermutationArray p = draw_sample(k, n, seed, cfg);
            const DiagonalEstimate est = compute_yn(p, c);
            m_used = est.m;

            YnTrial trial;
            trial.record.k = k;
            trial.record.n = n;
            trial.record.trial = t;
            trial.record.seed = seed;
            trial.record.sampler = sampler_name(k);
            trial.record.h = measure_h(p, cfg.policy, trial.record.order_type_policy);
            trial.record.y = est.y;
            trial.record.c = c;
            trial.z_sum = est.occupied();
            trial.chain_ok = trial.record.h >= trial.z_sum;
            trial.record.wall_ms = wall_ms_since(start);

            sum_y += est.y;
            max_y = std::max(max_y, est.y);
            size.chain_ok_all = size.chain_ok_all && trial.chain_ok;
            result.trials.push_back(std::move(trial));
        }
        size.mean_y = sum_y / trials;
        size.max_y = max_y;
        size.cap = (n / m_used) * std::pow(static_cast<double>(n), -exponent);
        result.sizes.push_back(size);
    }
    return result;
}

}  // namespace hdp
