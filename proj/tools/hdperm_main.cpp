#include <CLI11.hpp>
#include <json.hpp>

#include "hdperm/harness.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stoi(item));
    }
    if (out.empty()) throw CLI::ValidationError("expected a comma-separated list of integers");
    return out;
}

json profile_json(const hdp::LengthProfile& profile) {
    json obj = json::object();
    for (std::uint32_t mask = 0; mask < profile.count(); ++mask)
        obj[hdp::OrderType::from_mask(mask, profile.coords()).to_string()] = profile.at_mask(mask);
    return obj;
}

json witness_json(const hdp::ChainWitness& witness) {
    json arr = json::array();
    for (const hdp::SupportPoint& pt : witness.points) arr.push_back(pt);
    return arr;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << text;
}

void emit(const json& doc, const std::string& path) {
    if (path.empty())
        std::cout << doc.dump(2) << "\n";
    else
        write_text_file(path, doc.dump(2) + "\n");
}

// ----------------------------------------------------------------- construct

struct ConstructArgs {
    int k = 2;
    int n = 0;
    std::string variant = "coprime";
    int M = 0;
    int r = 0;
    int s = 0;
    std::string out;
    std::string meta;
};

int run_construct(const ConstructArgs& a) {
    hdp::PermutationArray array(1, 1, {1});
    json meta;
    meta["k"] = a.k;
    meta["n"] = a.n;
    meta["variant"] = a.variant;
    if (a.variant == "prime") {
        array = hdp::extremal_prime(a.n, a.k);
        meta["M"] = hdp::balanced_modulus_step(a.n, a.k);
    } else if (a.variant == "coprime") {
        const hdp::CoprimeConstruction c = hdp::extremal_coprime(a.n, a.k);
        array = c.array;
        meta["M"] = c.modulus_step;
    } else if (a.variant == "general") {
        if (a.M < 1) throw CLI::ValidationError("--M is required for --variant general");
        array = hdp::extremal_general(a.n, a.k, a.M);
        meta["M"] = a.M;
    } else if (a.variant == "asym") {
        if (a.r < 1 || a.s < 1) throw CLI::ValidationError("--r and --s are required for --variant asym");
        const hdp::AsymmetricConstruction c = hdp::extremal_asymmetric(a.n, a.k, a.r, a.s);
        array = c.array;
        meta["M"] = c.modulus_step;
        meta["r"] = a.r;
        meta["s"] = a.s;
        meta["hypothesis_holds"] = c.hypothesis_holds;
    } else {
        throw CLI::ValidationError("unknown variant '" + a.variant + "'");
    }
    meta["g"] = std::gcd(meta["M"].get<int>(), a.n);

    hdp::save_array(a.out, array);
    emit(meta, a.meta.empty() ? a.out + ".json" : a.meta);
    std::cout << "wrote " << a.out << " (k=" << a.k << ", n=" << a.n << ", variant=" << a.variant
              << ", M=" << meta["M"].get<int>() << ")\n";
    return 0;
}

// ------------------------------------------------------------------ validate

int run_validate(const std::string& in) {
    const hdp::PermutationArray p = hdp::load_array(in);
    const hdp::ValidationReport report = hdp::validate(p);
    json doc;
    doc["ok"] = report.ok;
    doc["k"] = p.k();
    doc["n"] = p.n();
    json violations = json::array();
    for (const hdp::LineViolation& v : report.violations) {
        json item;
        item["axis"] = v.axis;
        item["line_anchor"] = v.anchor;
        violations.push_back(item);
    }
    doc["violations"] = violations;
    std::cout << doc.dump(2) << "\n";
    return report.ok ? 0 : 1;
}

// ----------------------------------------------------------------------- lms

int run_lms(const std::string& in, const std::string& order_type, bool all, bool with_witness) {
    const hdp::PermutationArray p = hdp::load_array(in);
    const int coords = p.k() + 1;

    std::vector<hdp::OrderType> types;
    if (all) {
        for (std::uint32_t mask = 0; mask < (1u << coords); ++mask)
            types.push_back(hdp::OrderType::from_mask(mask, coords));
    } else if (!order_type.empty()) {
        const hdp::OrderType c = hdp::OrderType::parse(order_type);
        if (c.length() != coords) throw CLI::ValidationError("--order-type must have k+1 bits");
        types.push_back(c);
    } else {
        types.push_back(hdp::OrderType::ones(coords));
    }

    json results = json::array();
    for (const hdp::OrderType& c : types) {
        const hdp::LongestMonotoneResult res = hdp::longest_monotone(p, c);
        json item;
        item["order_type"] = c.to_string();
        item["length"] = res.length;
        if (with_witness) item["witness"] = witness_json(res.witness);
        results.push_back(item);
    }
    std::cout << (results.size() == 1 ? results[0].dump(2) : results.dump(2)) << "\n";
    return 0;
}

// -------------------------------------------------------------------- oracle

hdp::BoxMatrix load_box_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
    hdp::BoxMatrix x;
    if (!(in >> x.rows >> x.cols)) throw std::runtime_error("matrix file must start with rows cols");
    for (int i = 0; i < x.rows * x.cols; ++i) {
        int v = 0;
        if (!(in >> v)) throw std::runtime_error("matrix file ended early");
        x.entries.push_back(v);
    }
    return x;
}

int run_oracle_box(const std::string& in) {
    const hdp::BoxMatrix x = load_box_matrix(in);
    const int value = hdp::max_box_set_oracle(x);
    const int bound = x.rows + 2 * x.cols;
    json doc;
    doc["value"] = value;
    doc["bound"] = bound;
    doc["bound_ok"] = value <= bound;
    std::cout << doc.dump(2) << "\n";
    return 0;
}

int run_oracle_flat(const std::string& in) {
    const hdp::PermutationArray p = hdp::load_array(in);
    const int value = hdp::max_flat_set_oracle(p);
    const int k = p.k();
    const long long bound = 3LL * (k - 1) * static_cast<long long>(hdp::table_cells(k - 1, p.n()));
    json doc;
    doc["value"] = value;
    doc["bound"] = bound;
    doc["bound_ok"] = k == 1 || value <= bound;
    std::cout << doc.dump(2) << "\n";
    return 0;
}

// -------------------------------------------------------------------- sample

struct SampleArgs {
    int k = 2;
    int n = 0;
    std::string sampler = "jm";
    std::string base;
    std::uint64_t seed = 0;
    std::int64_t burn_in = -1;
    std::int64_t thinning = -1;
    int count = 1;
    std::string out_dir;
};

int run_sample(const SampleArgs& a) {
    fs::create_directories(a.out_dir);
    json manifest;
    manifest["sampler"] = a.sampler;
    manifest["k"] = a.k;
    manifest["n"] = a.n;
    manifest["seed"] = a.seed;
    manifest["count"] = a.count;

    std::vector<std::string> files;
    if (a.sampler == "jm") {
        if (a.k != 2) throw CLI::ValidationError("the jm sampler targets Latin squares; use --k 2");
        hdp::SamplerConfig cfg;
        cfg.seed = a.seed;
        cfg.burn_in = a.burn_in;
        cfg.thinning = a.thinning;
        hdp::JmSampler sampler(a.n, cfg);
        manifest["burn_in"] = sampler.burn_in();
        manifest["thinning"] = sampler.thinning();
        manifest["distribution"] = "uniform over Latin squares (chain target)";
        for (int i = 0; i < a.count; ++i) {
            char name[32];
            std::snprintf(name, sizeof name, "sample_%04d.hdp", i);
            const fs::path path = fs::path(a.out_dir) / name;
            hdp::save_array(path.string(), sampler.next());
            files.push_back(name);
        }
    } else if (a.sampler == "isotopy") {
        const hdp::PermutationArray base =
            a.base.empty() ? hdp::cyclic_base(a.n, a.k) : hdp::load_array(a.base);
        if (base.n() != a.n || base.k() != a.k)
            throw CLI::ValidationError("--base dimensions disagree with --k/--n");
        manifest["base"] = a.base.empty() ? "cyclic" : a.base;
        manifest["distribution"] = "uniform over the isotopy class of the base";
        hdp::SplitRng rng(a.seed);
        for (int i = 0; i < a.count; ++i) {
            char name[32];
            std::snprintf(name, sizeof name, "sample_%04d.hdp", i);
            const fs::path path = fs::path(a.out_dir) / name;
            hdp::save_array(path.string(), hdp::sample_isotopy(base, rng));
            files.push_back(name);
        }
    } else {
        throw CLI::ValidationError("unknown sampler '" + a.sampler + "'");
    }
    manifest["files"] = files;
    emit(manifest, (fs::path(a.out_dir) / "manifest.json").string());
    std::cout << "wrote " << a.count << " samples to " << a.out_dir << "\n";
    return 0;
}

// --------------------------------------------------------------- experiments

struct ExperimentIo {
    std::string records;
    std::string summary;
    std::string gnuplot;
};

void write_records(const ExperimentIo& io, std::span<const hdp::ExperimentRecord> records) {
    if (io.records.empty()) return;
    hdp::append_records_csv(io.records, records);
    std::cout << "appended " << records.size() << " records to " << io.records << "\n";
}

int run_experiment_scaling(int k, const std::string& n_list, int trials, std::uint64_t seed,
                           const ExperimentIo& io) {
    hdp::RunConfig cfg;
    cfg.seed = seed;
    const std::vector<int> sizes = parse_int_list(n_list);
    const hdp::ScalingResult result = hdp::scaling_experiment(k, sizes, trials, cfg);
    write_records(io, result.records);

    json summary;
    summary["experiment"] = "scaling";
    summary["k"] = k;
    summary["trials"] = trials;
    summary["seed"] = seed;
    summary["slope"] = result.slope;
    json per_n = json::array();
    for (const hdp::ScalingSizeSummary& s : result.sizes) {
        json row;
        row["n"] = s.n;
        row["burn_in"] = s.burn_in;
        row["mean_H"] = s.mean_h;
        row["mean_ratio"] = s.mean_ratio;
        row["min_ratio"] = s.min_ratio;
        row["max_ratio"] = s.max_ratio;
        per_n.push_back(row);
    }
    summary["per_n"] = per_n;
    emit(summary, io.summary);

    if (!io.gnuplot.empty()) {
        std::ostringstream plot;
        plot << "# log n, log mean H (natural logs)\n";
        for (const hdp::ScalingSizeSummary& s : result.sizes)
            plot << std::log(static_cast<double>(s.n)) << " " << std::log(s.mean_h) << "\n";
        write_text_file(io.gnuplot, plot.str());
    }
    return 0;
}

int run_experiment_worstcase(int k, const std::string& n_list, const ExperimentIo& io) {
    const std::vector<int> sizes = parse_int_list(n_list);
    const auto rows = hdp::worstcase_experiment(k, sizes);
    write_records(io, hdp::worstcase_records(k, rows));

    json summary;
    summary["experiment"] = "worstcase";
    summary["k"] = k;
    json per_n = json::array();
    bool all_ok = true;
    for (const hdp::WorstcaseRow& row : rows) {
        json r;
        r["n"] = row.n;
        r["variant"] = row.variant;
        r["M"] = row.modulus_step;
        r["max_len"] = row.max_len;
        r["floor_bound"] = row.floor_bound;
        r["envelope"] = row.envelope;
        r["within_bounds"] = row.floor_bound <= row.max_len && row.max_len <= row.envelope;
        r["profile"] = profile_json(row.profile);
        all_ok = all_ok && r["within_bounds"].get<bool>();
        per_n.push_back(r);
    }
    summary["per_n"] = per_n;
    summary["all_within_bounds"] = all_ok;
    emit(summary, io.summary);
    return all_ok ? 0 : 1;
}

int run_experiment_asym(int k, int n, int r, int s, int samples, std::uint64_t seed,
                        const ExperimentIo& io) {
    hdp::RunConfig cfg;
    cfg.seed = seed;
    const hdp::AsymmetricReport report = hdp::asymmetric_experiment(k, n, r, s, samples, cfg);

    json summary;
    summary["experiment"] = "asym";
    summary["k"] = k;
    summary["n"] = n;
    summary["r"] = r;
    summary["s"] = s;
    summary["M"] = report.modulus_step;
    summary["forcing_applicable"] = report.forcing_applicable;
    summary["forcing_ok"] = report.forcing_ok;
    summary["tightness_applicable"] = report.tightness_applicable;
    summary["tightness_ok"] = report.tightness_ok;
    json cases = json::array();
    for (const hdp::AsymmetricCase& c : report.forcing_cases) {
        json item;
        item["source"] = c.source;
        item["len_increasing"] = c.len_increasing;
        item["len_last_decreasing"] = c.len_last_decreasing;
        cases.push_back(item);
    }
    summary["forcing_cases"] = cases;
    json cons;
    cons["source"] = report.construction.source;
    cons["len_increasing"] = report.construction.len_increasing;
    cons["len_last_decreasing"] = report.construction.len_last_decreasing;
    summary["construction"] = cons;
    emit(summary, io.summary);

    const bool ok = (!report.forcing_applicable || report.forcing_ok) &&
                    (!report.tightness_applicable || report.tightness_ok);
    return ok ? 0 : 1;
}

int run_experiment_yn(int k, const std::string& n_list, double c, int trials, std::uint64_t seed,
                      const ExperimentIo& io) {
    hdp::RunConfig cfg;
    cfg.seed = seed;
    const std::vector<int> sizes = parse_int_list(n_list);
    const double used_c = c > 0.0 ? c : hdp::default_subcube_constant(k);
    const hdp::YnResult result = hdp::yn_experiment(k, sizes, used_c, trials, cfg);

    std::vector<hdp::ExperimentRecord> records;
    records.reserve(result.trials.size());
    for (const hdp::YnTrial& t : result.trials) records.push_back(t.record);
    write_records(io, records);

    json summary;
    summary["experiment"] = "yn";
    summary["k"] = k;
    summary["C"] = used_c;
    summary["trials"] = trials;
    summary["seed"] = seed;
    json per_n = json::array();
    for (const hdp::YnSizeSummary& s : result.sizes) {
        json row;
        row["n"] = s.n;
        row["burn_in"] = s.burn_in;
        row["mean_Y"] = s.mean_y;
        row["max_Y"] = s.max_y;
        row["cap"] = s.cap;
        row["chain_ok_all"] = s.chain_ok_all;
        per_n.push_back(row);
    }
    summary["per_n"] = per_n;
    emit(summary, io.summary);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"high-dimensional permutation toolkit"};
    app.require_subcommand(1);

    // construct
    ConstructArgs cons;
    CLI::App* construct = app.add_subcommand("construct", "build an extremal permutation");
    construct->add_option("--k", cons.k, "dimension")->required();
    construct->add_option("--n", cons.n, "order")->required();
    construct->add_option("--variant", cons.variant, "prime|coprime|general|asym")
        ->default_val("coprime");
    construct->add_option("--M", cons.M, "modulus step (general variant)");
    construct->add_option("--r", cons.r, "target length under the all-increasing order (asym)");
    construct->add_option("--s", cons.s, "target length under the last-decreasing order (asym)");
    construct->add_option("--out", cons.out, "output file")->required();
    construct->add_option("--meta", cons.meta, "metadata sidecar path (default <out>.json)");

    // validate
    std::string validate_in;
    CLI::App* validate_cmd = app.add_subcommand("validate", "check the Latin line property");
    validate_cmd->add_option("--in", validate_in, "input file")->required();

    // lms
    std::string lms_in, lms_type;
    bool lms_all = false, lms_witness = false;
    CLI::App* lms = app.add_subcommand("lms", "longest monotone subsequence lengths");
    lms->add_option("--in", lms_in, "input file")->required();
    lms->add_option("--order-type", lms_type, "bit string, e.g. 110 (default: all ones)");
    lms->add_flag("--all", lms_all, "every order type");
    lms->add_flag("--witness", lms_witness, "include one optimal chain");

    // oracle
    CLI::App* oracle = app.add_subcommand("oracle", "exhaustive small-instance lemma checks");
    oracle->require_subcommand(1);
    std::string box_in, flat_in;
    CLI::App* box = oracle->add_subcommand("box", "max box-order set of a matrix file");
    box->add_option("--in", box_in, "matrix file: rows cols then entries")->required();
    CLI::App* flat = oracle->add_subcommand("flat", "max dominance-flat set of a permutation file");
    flat->add_option("--in", flat_in, "input file")->required();

    // sample
    SampleArgs smp;
    CLI::App* sample = app.add_subcommand("sample", "draw random permutations");
    sample->add_option("--k", smp.k, "dimension")->required();
    sample->add_option("--n", smp.n, "order")->required();
    sample->add_option("--sampler", smp.sampler, "jm|isotopy")->default_val("jm");
    sample->add_option("--base", smp.base, "isotopy base file (default: cyclic)");
    sample->add_option("--seed", smp.seed, "rng seed")->default_val(0);
    sample->add_option("--burn-in", smp.burn_in, "chain burn-in steps (default 10 n^3)");
    sample->add_option("--thin", smp.thinning, "steps between retained samples (default n^3)");
    sample->add_option("--count", smp.count, "number of samples")->default_val(1);
    sample->add_option("--out-dir", smp.out_dir, "output directory")->required();

    // experiment
    CLI::App* experiment = app.add_subcommand("experiment", "quantitative studies");
    experiment->require_subcommand(1);
    int exp_k = 2, exp_trials = 50, exp_n = 0, exp_r = 0, exp_s = 0, exp_samples = 5;
    std::uint64_t exp_seed = 0;
    double exp_c = 0.0;
    std::string exp_nlist;
    ExperimentIo io;

    CLI::App* scaling = experiment->add_subcommand("scaling", "H against n for random permutations");
    scaling->add_option("--k", exp_k, "dimension")->required();
    scaling->add_option("--n-list", exp_nlist, "comma-separated orders")->required();
    scaling->add_option("--trials", exp_trials, "trials per order")->default_val(50);
    scaling->add_option("--seed", exp_seed, "master seed")->default_val(0);
    scaling->add_option("--records", io.records, "append per-trial CSV here");
    scaling->add_option("--summary", io.summary, "summary JSON path (default stdout)");
    scaling->add_option("--gnuplot", io.gnuplot, "two-column log-log data file");

    CLI::App* worst = experiment->add_subcommand("worstcase", "extremal construction lengths");
    worst->add_option("--k", exp_k, "dimension")->required();
    worst->add_option("--n-list", exp_nlist, "comma-separated orders")->required();
    worst->add_option("--records", io.records, "append per-array CSV here");
    worst->add_option("--summary", io.summary, "summary JSON path (default stdout)");

    CLI::App* asym = experiment->add_subcommand("asym", "two-order forcing and tightness");
    asym->add_option("--k", exp_k, "dimension")->required();
    asym->add_option("--n", exp_n, "order")->required();
    asym->add_option("--r", exp_r, "target under the all-increasing order")->required();
    asym->add_option("--s", exp_s, "target under the last-decreasing order")->required();
    asym->add_option("--samples", exp_samples, "random draws for the forcing direction")->default_val(5);
    asym->add_option("--seed", exp_seed, "master seed")->default_val(0);
    asym->add_option("--summary", io.summary, "summary JSON path (default stdout)");

    CLI::App* yn = experiment->add_subcommand("yn", "diagonal-subcube estimator");
    yn->add_option("--k", exp_k, "dimension")->required();
    yn->add_option("--n-list", exp_nlist, "comma-separated orders")->required();
    yn->add_option("--C", exp_c, "subcube constant (default k^(1/(k+1)))");
    yn->add_option("--trials", exp_trials, "trials per order")->default_val(50);
    yn->add_option("--seed", exp_seed, "master seed")->default_val(0);
    yn->add_option("--records", io.records, "append per-trial CSV here");
    yn->add_option("--summary", io.summary, "summary JSON path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*construct) return run_construct(cons);
        if (*validate_cmd) return run_validate(validate_in);
        if (*lms) {
            if (lms_all && !lms_type.empty())
                throw CLI::ValidationError("--order-type and --all are mutually exclusive");
            return run_lms(lms_in, lms_type, lms_all, lms_witness);
        }
        if (*oracle) {
            if (*box) return run_oracle_box(box_in);
            if (*flat) return run_oracle_flat(flat_in);
        }
        if (*sample) return run_sample(smp);
        if (*experiment) {
            if (*scaling) return run_experiment_scaling(exp_k, exp_nlist, exp_trials, exp_seed, io);
            if (*worst) return run_experiment_worstcase(exp_k, exp_nlist, io);
            if (*asym)
                return run_experiment_asym(exp_k, exp_n, exp_r, exp_s, exp_samples, exp_seed, io);
            if (*yn) return run_experiment_yn(exp_k, exp_nlist, exp_c, exp_trials, exp_seed, io);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const hdp::FormatError& e) {
        std::cerr << "format error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
