#include "lindet/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "lindet/errors.hpp"
#include "lindet/experiments.hpp"
#include "lindet/properties.hpp"
#include "lindet/result_table.hpp"

namespace lindet {

namespace {

struct Flags {
    std::optional<std::string> dims;
    std::optional<std::size_t> n;
    std::optional<std::string> snr;
    std::optional<std::size_t> trials;
    std::uint64_t seed = 1;
    std::optional<std::string> sigma_min;
    std::optional<double> cond;
    std::optional<std::string> out;
    std::string format = "csv";
    std::size_t workers = 1;
    std::optional<std::string> emit_plot;
};

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string part;
    std::istringstream in(text);
    while (std::getline(in, part, sep)) parts.push_back(part);
    if (!text.empty() && text.back() == sep) parts.emplace_back();
    return parts;
}

double parse_real(const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw InvalidArgumentError("not a number: '" + s + "'");
    }
    if (used != s.size() || !std::isfinite(v)) throw InvalidArgumentError("not a finite number: '" + s + "'");
    return v;
}

SimConfig base_config(const Flags& f, std::size_t default_trials) {
    SimConfig c;
    c.trials = f.trials.value_or(default_trials);
    c.master_seed = f.seed;
    c.workers = f.workers;
    if (c.trials < 1) throw InvalidArgumentError("--trials must be >= 1");
    return c;
}

std::vector<std::size_t> dims_or(const Flags& f, std::vector<std::size_t> fallback) {
    return f.dims ? parse_dims(*f.dims) : std::move(fallback);
}

std::size_t single_dim(const Flags& f, std::size_t fallback) {
    const std::size_t n = f.n.value_or(fallback);
    if (n < 2) throw InvalidArgumentError("--n must be >= 2");
    return n;
}

std::string plot_script(const ResultTable& table, const std::string& csv) {
    std::ostringstream p;
    p << "# gnuplot script for " << table.experiment() << " (lindet " << kVersion << ")\n"
      << "set datafile separator ','\n"
      << "set key autotitle columnhead\n"
      << "set grid\n"
      << "data = '" << csv << "'\n";
    const std::string& e = table.experiment();
    if (e == "table1") {
        p << "set xlabel 'N'\nset ylabel 'E[cond(H)]'\n"
          << "plot data using 1:4:5 with yerrorlines title 'mean cond(H)'\n";
    } else if (e == "gain") {
        p << "set xlabel 'receive SNR (dB)'\nset ylabel 'MMSE gain (dB)'\n"
          << "dims = system(\"tail -n +2 \".data.\" | grep -v '^#' | cut -d, -f1 | sort -nu | tr '\\n' ' '\")\n"
          << "plot for [n in dims] data using (($1==n+0)?$2:1/0):4 with linespoints title 'N='.n\n";
    } else if (e == "cdf") {
        p << "set xlabel 'sigma_N'\nset ylabel 'CDF'\n"
          << "dims = system(\"grep '^cdf,' \".data.\" | cut -d, -f2 | sort -nu | tr '\\n' ' '\")\n"
          << "plot for [n in dims] data using ((strcol(1) eq 'cdf' && $2==n+0)?$3:1/0):4 with lines title 'N='.n\n";
    } else if (e == "ber") {
        p << "set logscale y\nset xlabel 'receive SNR (dB)'\nset ylabel 'BER'\n"
          << "plot data using ((strcol(1) eq 'zf')?$2:1/0):4 with linespoints title 'ZF', \\\n"
          << "     data using ((strcol(1) eq 'mmse')?$2:1/0):4 with linespoints title 'MMSE'\n";
    } else if (e == "condratio") {
        p << "set xlabel 'sigma_min'\nset ylabel 'cond(W_mmse)/cond(W_zf)'\n"
          << "plot data using ((strcol(1) eq 'two_level')?$2:1/0):4 with linespoints title 'exact (two-level)', \\\n"
          << "     data using ((strcol(1) eq 'geometric')?$2:1/0):4 with linespoints title 'exact (geometric)', \\\n"
          << "     data using ((strcol(1) eq 'two_level')?$2:1/0):6 with lines title 'approximation'\n";
    } else {
        p << "# no plot defined for this experiment\n";
    }
    return p.str();
}

} // namespace

std::vector<double> parse_real_grid(const std::string& text) {
    const std::vector<std::string> range = split(text, ':');
    if (range.size() == 3) {
        const double lo = parse_real(range[0]);
        const double hi = parse_real(range[1]);
        const double step = parse_real(range[2]);
        if (!(step > 0.0)) throw InvalidArgumentError("grid step must be positive in '" + text + "'");
        if (hi < lo) throw InvalidArgumentError("grid max is below min in '" + text + "'");
        const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 0.5)) + 1;
        std::vector<double> out(count);
        for (std::size_t i = 0; i < count; ++i) out[i] = lo + step * static_cast<double>(i);
        return out;
    }
    if (range.size() != 1) throw InvalidArgumentError("expected min:max:step or a comma list, got '" + text + "'");
    std::vector<double> out;
    for (const std::string& part : split(text, ',')) out.push_back(parse_real(part));
    if (out.empty()) throw InvalidArgumentError("empty grid");
    return out;
}

std::vector<std::size_t> parse_dims(const std::string& text) {
    std::vector<std::size_t> out;
    for (const std::string& part : split(text, ',')) {
        const double v = parse_real(part);
        if (v < 2 || v != std::floor(v) || v > 4096) throw InvalidArgumentError("dimension must be an integer >= 2: '" + part + "'");
        out.push_back(static_cast<std::size_t>(v));
    }
    if (out.empty()) throw InvalidArgumentError("--dims is empty");
    return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Linear ZF/MMSE MIMO detector analysis and Monte Carlo experiments", "lindet"};
    app.set_config("--config", "", "key=value file mirroring the long flags; flags override it");
    app.require_subcommand(1);

    Flags f;
    if (const char* env = std::getenv("LINDET_SEED")) {
        try {
            f.seed = std::stoull(env);
        } catch (const std::exception&) {
            err << "LINDET_SEED is not an unsigned integer: " << env << '\n';
            return kExitUsage;
        }
    }
    app.add_option("--dims", f.dims, "comma-separated dimensions, e.g. 2,4,8");
    app.add_option("--n", f.n, "dimension for ber/condratio");
    app.add_option("--snr", f.snr, "SNR grid in dB: min:max:step, a,b,c or a single value");
    app.add_option("--trials", f.trials, "Monte Carlo trials per point");
    app.add_option("--seed", f.seed, "master seed (default: $LINDET_SEED or 1)");
    app.add_option("--sigma-min", f.sigma_min, "ber: sigma_min floor; condratio: sigma_min grid");
    app.add_option("--cond", f.cond, "condratio: target cond(H)");
    app.add_option("--out", f.out, "output file (default: standard output)");
    app.add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--workers", f.workers, "worker threads (0 = all cores); results do not depend on it");
    app.add_option("--emit-plot", f.emit_plot, "write a gnuplot script for the CSV output");

    const std::pair<const char*, const char*> commands[] = {
        {"table1", "mean sigma_min and cond(H) per N"},
        {"gain", "formula-based MMSE-over-ZF post-processing SNR gain"},
        {"cdf", "CDF of sigma_min and tail law for the largest N"},
        {"ber", "paired ZF/MMSE BER sweep"},
        {"condratio", "cond(W_mmse)/cond(W_zf) against its approximation"},
        {"props", "run the invariant suite"},
    };
    for (const auto& [name, help] : commands) app.add_subcommand(name, help)->fallthrough();

    std::vector<std::string> argv_storage{"lindet"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_storage) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::Success& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "lindet: " << e.what() << '\n';
        return kExitUsage;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    ResultTable table("empty", {}, f.seed, 0, "none");
    bool props_failed = false;
    std::ofstream file;
    try {
        if (f.emit_plot && (!f.out || f.format != "csv")) {
            throw InvalidArgumentError("--emit-plot needs --out with --format csv");
        }
        if (f.out) {
            file.open(*f.out, std::ios::binary | std::ios::trunc);
            if (!file) throw InvalidArgumentError("cannot write output file '" + *f.out + "'");
        }

        if (command == "table1") {
            SimConfig c = base_config(f, 10000);
            c.dims = dims_or(f, {2, 4, 8, 12, 16, 20});
            table = run_table1(c);
        } else if (command == "gain") {
            SimConfig c = base_config(f, 5000);
            c.dims = dims_or(f, {2, 4, 8, 12, 16, 20});
            c.snr_grid_db = parse_real_grid(f.snr.value_or("0:50:5"));
            table = run_gain_sweep(c);
        } else if (command == "cdf") {
            SimConfig c = base_config(f, 20000);
            c.dims = dims_or(f, {2, 4, 8});
            table = run_min_singular_cdf(c);
        } else if (command == "ber") {
            SimConfig c = base_config(f, 200000);
            c.dims = {single_dim(f, 4)};
            c.snr_grid_db = parse_real_grid(f.snr.value_or("0:45:5"));
            c.sigma_min_floor = f.sigma_min ? parse_real(*f.sigma_min) : 0.0;
            if (*c.sigma_min_floor < 0.0) throw InvalidArgumentError("--sigma-min must be >= 0");
            table = run_ber_sweep(c);
        } else if (command == "condratio") {
            SimConfig c = base_config(f, 1000);
            c.dims = {single_dim(f, 4)};
            c.snr_grid_db = parse_real_grid(f.snr.value_or("10"));
            if (c.snr_grid_db.size() != 1) throw InvalidArgumentError("condratio takes a single --snr value (1/sigma_n^2 in dB)");
            c.cond_target = f.cond.value_or(15.0);
            if (*c.cond_target < 1.0) throw InvalidArgumentError("--cond must be >= 1");
            c.sigma_min_grid = parse_real_grid(f.sigma_min.value_or("0.05,0.1,0.2,0.3,0.4,0.5,0.75,1,1.5,2"));
            for (double s : c.sigma_min_grid) {
                if (!(s > 0.0)) throw InvalidArgumentError("--sigma-min values must be positive");
            }
            table = run_cond_ratio_sweep(c);
        } else {
            const PropertyReport report = run_property_suite(f.seed, f.workers);
            table = report.table(f.seed);
            props_failed = !report.all_passed();
        }
    } catch (const InvalidArgumentError& e) {
        err << "lindet " << command << ": " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "lindet " << command << ": " << e.what() << '\n';
        return kExitRuntime;
    }

    std::ostringstream body;
    if (f.format == "json") {
        table.write_json(body);
    } else {
        table.write_csv(body);
    }
    std::ostream& sink = f.out ? static_cast<std::ostream&>(file) : out;
    sink << body.str();
    sink.flush();
    if (!sink) {
        err << "lindet " << command << ": failed writing output\n";
        return kExitRuntime;
    }
    if (f.emit_plot) {
        std::ofstream plot(*f.emit_plot, std::ios::binary | std::ios::trunc);
        plot << plot_script(table, *f.out);
        if (!plot) {
            err << "lindet " << command << ": cannot write plot script '" << *f.emit_plot << "'\n";
            return kExitRuntime;
        }
    }
    if (props_failed) {
        err << "lindet props: invariant violations found\n";
        return kExitRuntime;
    }
    return kExitOk;
}

} // namespace lindet
