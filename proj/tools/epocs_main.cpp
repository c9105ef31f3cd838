// Command-line runner: generates or loads signals, applies seeded noise,
// runs the denoising / compressive-sensing solvers, and writes CSV + PGM
// results.  All randomness derives from --seed, so re-running a config
// reproduces every output byte for byte.

#include "epocs/cs.hpp"
#include "epocs/csv.hpp"
#include "epocs/denoise.hpp"
#include "epocs/metrics.hpp"
#include "epocs/noise.hpp"
#include "epocs/pgm.hpp"
#include "epocs/phantom.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

namespace fs = std::filesystem;
using namespace epocs;

namespace {

struct CommonArgs {
    std::string input;
    std::string out_dir = "epocs_out";
    std::uint64_t seed = 0;
    double alpha = 1.0;
};

Signal load_input(const std::string& spec, std::uint64_t seed) {
    if (spec.rfind("phantom:", 0) == 0) {
        int w = 0, h = 0, idx = 0;
        char x = 0, comma = 0;
        std::istringstream in(spec.substr(8));
        if (!(in >> w >> x >> h >> comma >> idx) || x != 'x' || comma != ',')
            throw CLI::ValidationError("--input", "expected phantom:<W>x<H>,<index>");
        return make_phantom(w, h, idx, seed);
    }
    if (spec.rfind("cusp:", 0) == 0) {
        const int n = std::stoi(spec.substr(5));
        return make_cusp(n);
    }
    if (spec.rfind("sparse:", 0) == 0) {
        SparseSpec s;
        std::string rest = spec.substr(7);
        std::replace(rest.begin(), rest.end(), ',', ' ');
        std::istringstream in(rest);
        std::string law;
        if (!(in >> s.n >> s.sparsity))
            throw CLI::ValidationError("--input", "expected sparse:<n>,<k>[,unit|gaussian]");
        if (in >> law) {
            if (law == "gaussian")
                s.amplitude_law = SparseSpec::Amplitude::gaussian;
            else if (law != "unit")
                throw CLI::ValidationError("--input", "amplitude law must be unit or gaussian");
        }
        s.seed = sub_seed(seed, "sparse", 0);
        return make_sparse(s);
    }
    const fs::path p(spec);
    if (p.extension() == ".pgm") return load_pgm(spec);
    return load_csv_signal(spec);
}

std::vector<double> parse_list(const std::string& csv, const char* flag) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        try {
            out.push_back(std::stod(cell));
        } catch (const std::exception&) {
            throw CLI::ValidationError(flag, "bad numeric list element '" + cell + "'");
        }
    }
    if (out.empty()) throw CLI::ValidationError(flag, "empty list");
    return out;
}

void save_signal_as(const fs::path& dir, const std::string& stem, const Signal& s,
                    const std::string& echo) {
    if (s.is_image())
        save_pgm((dir / (stem + ".pgm")).string(), s);
    else
        save_csv_signal((dir / (stem + ".csv")).string(), s, echo);
}

std::string blank() { return ""; }

// ---------------------------------------------------------------- denoise --

struct DenoiseArgs : CommonArgs {
    std::string noise = "gaussian:30";
    std::string method = "both";
    std::string lambda_grid = "0.5,1,2,4,8,16,32,64";
    double tol = 1e-6;
    int max_iter = 500;
    bool curves_only = false;
};

void write_trace_csv(const fs::path& path, const ProjectionTrace& trace, const Signal& target,
                     const Signal* truth, const std::string& echo) {
    CsvTable table({"iteration", "distance", "nrmse_db", "ntv"});
    for (std::size_t i = 0; i < trace.distances.size(); ++i) {
        std::vector<std::string> row(4);
        row[0] = std::to_string(i);
        row[1] = format_double(trace.distances[i]);
        if (truth != nullptr) {
            const Signal w = Signal::with_shape_of(std::vector<double>(trace.iterates[i].w.data()),
                                                   target);
            row[2] = format_double(20.0 * std::log10(nrmse(*truth, w)));
            row[3] = format_double(ntv(*truth, w));
        } else {
            row[2] = blank();
            row[3] = blank();
        }
        table.add_row(std::move(row));
    }
    table.save(path.string(), echo);
}

int run_denoise(const DenoiseArgs& args) {
    const fs::path dir(args.out_dir);
    fs::create_directories(dir);

    std::ostringstream echo;
    echo << "epocs " << (args.curves_only ? "curves" : "denoise") << " input=" << args.input
         << " noise=" << args.noise << " method=" << args.method << " alpha=" << args.alpha
         << " lambda-grid=" << args.lambda_grid << " tol=" << args.tol
         << " max-iter=" << args.max_iter << " seed=" << args.seed;

    const Signal loaded = load_input(args.input, args.seed);
    std::optional<Signal> truth;
    Signal noisy = loaded;
    if (args.noise != "none") {
        const NoiseModel model = NoiseModel::parse(args.noise, sub_seed(args.seed, "noise", 0));
        truth = loaded;
        noisy = add_noise(loaded, model);
    }

    const bool want_pocs = args.curves_only || args.method == "pocs" || args.method == "both";
    const bool want_baseline = !args.curves_only &&
                               (args.method == "chambolle" || args.method == "both");
    if (!want_pocs && !want_baseline)
        throw CLI::ValidationError("--method", "must be pocs, chambolle or both");
    if (want_baseline && !truth)
        throw CLI::ValidationError("--noise",
                                   "the baseline needs a known truth to tune lambda; "
                                   "supply a noise model instead of 'none'");
    if (want_baseline && !noisy.is_image())
        throw CLI::ValidationError("--method", "the chambolle baseline handles 2D images only");

    if (truth) save_signal_as(dir, "truth", *truth, echo.str());
    save_signal_as(dir, "noisy", noisy, echo.str());

    CsvTable summary(
        {"method", "alpha", "lambda", "input_snr_db", "output_snr_db", "ntv", "iterations"});

    if (want_pocs) {
        const auto t0 = std::chrono::steady_clock::now();
        DenoiseResult r = pocs_denoise(noisy, args.alpha, args.tol, args.max_iter);
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
        std::cerr << "pocs: " << ms << " ms, " << r.iterations_run << " iterations\n";

        save_signal_as(dir, "denoised_pocs", r.estimate, echo.str());
        write_trace_csv(dir / (args.curves_only ? "curves.csv" : "trace_pocs.csv"), r.trace,
                        noisy, truth ? &*truth : nullptr, echo.str());
        summary.add_row({std::string("pocs"), format_double(args.alpha),
                         format_double(r.lambda_equivalent),
                         truth ? format_double(snr_db(*truth, noisy)) : blank(),
                         truth ? format_double(snr_db(*truth, r.estimate)) : blank(),
                         truth ? format_double(ntv(*truth, r.estimate)) : blank(),
                         std::to_string(r.iterations_run)});
    }

    if (want_baseline) {
        const auto grid = parse_list(args.lambda_grid, "--lambda-grid");
        const auto [best_lambda, best_snr] = lambda_grid_search(noisy, *truth, grid);
        BaselineConfig cfg;
        cfg.lambda = best_lambda;
        DenoiseResult r = chambolle_denoise(noisy, cfg);
        save_signal_as(dir, "denoised_chambolle", r.estimate, echo.str());
        summary.add_row({std::string("chambolle"), blank(), format_double(best_lambda),
                         format_double(snr_db(*truth, noisy)), format_double(best_snr),
                         format_double(ntv(*truth, r.estimate)),
                         std::to_string(cfg.iterations)});
    }

    summary.save((dir / "summary.csv").string(), echo.str());
    return 0;
}

// -------------------------------------------------------------------- cs1d --

struct Cs1dArgs : CommonArgs {
    std::string cost = "l1-dct";
    std::string measure_pct = "30";
    double tol = 1e-6;
    int max_outer = 1000;
    Cs1dArgs() { alpha = 0.5; }
};

int run_cs1d(const Cs1dArgs& args) {
    const fs::path dir(args.out_dir);
    fs::create_directories(dir);

    std::ostringstream echo;
    echo << "epocs cs1d input=" << args.input << " cost=" << args.cost
         << " measure-pct=" << args.measure_pct << " alpha=" << args.alpha
         << " tol=" << args.tol << " max-outer=" << args.max_outer << " seed=" << args.seed;

    if (args.cost != "tv" && args.cost != "l1-dct")
        throw CLI::ValidationError("--cost", "must be tv or l1-dct");

    const Signal x = load_input(args.input, args.seed);
    const int n = static_cast<int>(x.size());
    save_csv_signal((dir / "original.csv").string(), x, echo.str());

    const auto pcts = parse_list(args.measure_pct, "--measure-pct");

    CsvTable summary({"measure_pct", "m", "cost", "alpha", "snr_db", "residual_l2",
                      "outer_iterations"});
    TvCost tv = TvCost::one_dimensional();
    L1Cost l1;

    for (std::size_t pi = 0; pi < pcts.size(); ++pi) {
        const double pct = pcts[pi];
        const int m = std::max(1, static_cast<int>(std::lround(pct / 100.0 * n)));
        if (m > n) throw CLI::ValidationError("--measure-pct", "more measurements than samples");
        const RowMatrix phi = gaussian_measurement_matrix(m, n, sub_seed(args.seed, "phi", pi));

        CsOptions opts;
        opts.alpha = args.alpha;
        opts.tol = args.tol;
        opts.max_outer = args.max_outer;

        CsResult r;
        if (args.cost == "tv") {
            MeasurementSystem sys = make_signal_system(phi, x);
            r = cs_reconstruct(sys, tv, opts);
        } else {
            MeasurementSystem sys = make_dct_system(phi, x);
            r = cs_reconstruct(sys, l1, opts);
        }

        const std::string tag = "p" + std::to_string(static_cast<int>(std::lround(pct)));
        save_csv_signal((dir / ("reconstructed_" + tag + ".csv")).string(), r.estimate,
                        echo.str());
        CsvTable trace({"outer", "residual", "cost", "change", "nrmse_db"});
        for (const auto& row : r.trace)
            trace.add_row({std::to_string(row.outer), format_double(row.residual),
                           format_double(row.cost), format_double(row.change), blank()});
        trace.save((dir / ("cs1d_trace_" + tag + ".csv")).string(), echo.str());

        summary.add_row({format_double(pct), std::to_string(m), args.cost,
                         format_double(args.alpha), format_double(snr_db(x, r.estimate)),
                         format_double(r.trace.empty() ? 0.0 : r.trace.back().residual),
                         std::to_string(r.outer_iterations)});
    }
    summary.save((dir / "summary.csv").string(), echo.str());
    return 0;
}

// -------------------------------------------------------------------- cs2d --

struct Cs2dArgs : CommonArgs {
    std::string cost = "tv";
    int block = 32;
    double ratio = 0.3;
    double tol = 1e-6;
    int max_outer = 1000;
    Cs2dArgs() { alpha = 0.5; }
};

int run_cs2d(const Cs2dArgs& args) {
    const fs::path dir(args.out_dir);
    fs::create_directories(dir);

    std::ostringstream echo;
    echo << "epocs cs2d input=" << args.input << " cost=" << args.cost << " block=" << args.block
         << " ratio=" << args.ratio << " alpha=" << args.alpha << " tol=" << args.tol
         << " max-outer=" << args.max_outer << " seed=" << args.seed;

    if (args.cost != "tv" && args.cost != "l1-dct")
        throw CLI::ValidationError("--cost", "must be tv or l1-dct");

    const Signal image = load_input(args.input, args.seed);
    if (!image.is_image())
        throw CLI::ValidationError("--input", "cs2d needs an image input");
    save_pgm((dir / "original.pgm").string(), image);

    BlockScheme scheme;
    scheme.block_size = args.block;
    scheme.measurement_ratio = args.ratio;
    scheme.seed = args.seed;

    CsOptions opts;
    opts.alpha = args.alpha;
    opts.tol = args.tol;
    opts.max_outer = args.max_outer;

    const auto t0 = std::chrono::steady_clock::now();
    const Signal rec = block_cs_reconstruct(
        image, scheme, args.cost == "tv" ? BlockCostKind::tv : BlockCostKind::l1_dct,
        args.alpha, opts);
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    std::cerr << "cs2d: " << ms << " ms\n";

    const std::string tag = "b" + std::to_string(args.block);
    save_pgm((dir / ("reconstructed_" + tag + ".pgm")).string(), rec);

    CsvTable summary({"block", "ratio", "cost", "alpha", "snr_db"});
    summary.add_row({std::to_string(args.block), format_double(args.ratio), args.cost,
                     format_double(args.alpha), format_double(snr_db(image, rec))});
    summary.save((dir / "summary.csv").string(), echo.str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Epigraph-set POCS denoising and compressive sensing"};
    app.require_subcommand(1);

    DenoiseArgs dn;
    auto add_common = [](CLI::App* cmd, CommonArgs& a, double default_alpha) {
        a.alpha = default_alpha;
        cmd->add_option("--input", a.input, "input file (.pgm/.csv) or generator spec "
                                            "(phantom:<W>x<H>,<i> | cusp:<n> | sparse:<n>,<k>)")
            ->required();
        cmd->add_option("--out-dir", a.out_dir, "output directory");
        cmd->add_option("--seed", a.seed, "master seed");
        cmd->add_option("--alpha", a.alpha, "epigraph weight multiplier");
        cmd->set_config("--config");
    };

    CLI::App* denoise = app.add_subcommand("denoise", "TV denoising, epigraph and baseline");
    add_common(denoise, dn, 1.0);
    denoise->add_option("--noise", dn.noise, "gaussian:<std> | eps:<e>,<s1>,<s2> | none");
    denoise->add_option("--method", dn.method, "pocs | chambolle | both");
    denoise->add_option("--lambda-grid", dn.lambda_grid, "baseline tuning grid");
    denoise->add_option("--tol", dn.tol, "projection tolerance");
    denoise->add_option("--max-iter", dn.max_iter, "projection iteration cap");

    DenoiseArgs cv;
    cv.curves_only = true;
    CLI::App* curves = app.add_subcommand("curves", "convergence curves of the epigraph denoiser");
    add_common(curves, cv, 1.0);
    curves->add_option("--noise", cv.noise, "gaussian:<std> | eps:<e>,<s1>,<s2> | none");
    curves->add_option("--tol", cv.tol, "projection tolerance");
    curves->add_option("--max-iter", cv.max_iter, "projection iteration cap");

    Cs1dArgs c1;
    CLI::App* cs1d = app.add_subcommand("cs1d", "1D compressive-sensing reconstruction");
    add_common(cs1d, c1, 0.5);
    cs1d->add_option("--cost", c1.cost, "tv | l1-dct");
    cs1d->add_option("--measure-pct", c1.measure_pct, "measurement percentages, e.g. 10,20,30");
    cs1d->add_option("--tol", c1.tol, "outer-iterate tolerance");
    cs1d->add_option("--max-outer", c1.max_outer, "outer iteration cap");

    Cs2dArgs c2;
    CLI::App* cs2d = app.add_subcommand("cs2d", "block-based 2D compressive sensing");
    add_common(cs2d, c2, 0.5);
    cs2d->add_option("--cost", c2.cost, "tv | l1-dct");
    cs2d->add_option("--block", c2.block, "block size");
    cs2d->add_option("--ratio", c2.ratio, "measurement ratio in (0, 1]");
    cs2d->add_option("--tol", c2.tol, "outer-iterate tolerance");
    cs2d->add_option("--max-outer", c2.max_outer, "outer iteration cap");

    try {
        app.parse(argc, argv);
        if (denoise->parsed()) return run_denoise(dn);
        if (curves->parsed()) return run_denoise(cv);
        if (cs1d->parsed()) return run_cs1d(c1);
        if (cs2d->parsed()) return run_cs2d(c2);
        std::cerr << app.help() << "\n";
        return 2;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return 0; // --help
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
