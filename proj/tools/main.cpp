// Command-line front end.  Subcommands emit self-describing CSV/JSON
// artifacts; config-driven runs echo an effective_config.json that, fed back
// in, reproduces the outputs byte for byte.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "halfwave/bessel.hpp"
#include "halfwave/estimates.hpp"
#include "halfwave/grid.hpp"
#include "halfwave/io.hpp"
#include "halfwave/lifespan.hpp"
#include "halfwave/simulator.hpp"
#include "halfwave/version.hpp"

namespace hw = halfwave;
namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

struct CommonOpts {
    std::string out_dir = ".";
    std::string format = "both";  // csv | json | both
    bool seedless = true;         // accepted for symmetry; everything is deterministic
};

bool want_csv(const CommonOpts& o) { return o.format != "json"; }
bool want_json(const CommonOpts& o) { return o.format != "csv"; }

std::string short_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

/// Files written by this invocation; removed wholesale on failure so no
/// partial artifact survives.
class OutputTracker {
  public:
    explicit OutputTracker(std::string dir) : dir_(std::move(dir)) {
        std::error_code ec;
        fs::create_directories(dir_, ec);
        if (ec) throw std::invalid_argument("cannot create output directory: " + dir_);
    }
    void write(const std::string& name, const std::string& content) {
        fs::path p = fs::path(dir_) / name;
        hw::write_file(p.string(), content);
        written_.push_back(p.string());
    }
    void discard_all() noexcept {
        for (const auto& p : written_) {
            std::error_code ec;
            fs::remove(p, ec);
        }
        written_.clear();
    }

  private:
    std::string dir_;
    std::vector<std::string> written_;
};

// ---------------------------------------------------------------- configs --

void check_keys(const ordered_json& j, std::initializer_list<const char*> allowed,
                const std::string& ctx) {
    if (!j.is_object())
        throw std::invalid_argument("config section '" + ctx + "' must be an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* a : allowed)
            if (it.key() == a) {
                known = true;
                break;
            }
        if (!known)
            throw std::invalid_argument("unknown key '" + it.key() + "' in config section '" +
                                        ctx + "'");
    }
}

void require_key(const ordered_json& j, const char* key, const std::string& ctx) {
    if (!j.contains(key))
        throw std::invalid_argument("config section '" + ctx + "' is missing required key '" +
                                    key + "'");
}

std::complex<double> parse_complex(const ordered_json& j, const std::string& ctx) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw std::invalid_argument("'" + ctx + "' must be a number or a [re, im] pair");
}

ordered_json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    try {
        return ordered_json::parse(in);
    } catch (const ordered_json::parse_error& e) {
        throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
    }
}

hw::DatumSpec parse_datum(const ordered_json& j) {
    check_keys(j, {"family", "mu", "k", "mollify_radius"}, "problem.datum");
    require_key(j, "family", "problem.datum");
    require_key(j, "mu", "problem.datum");
    const std::string fam = j.at("family").get<std::string>();
    const double mu = j.at("mu").get<double>();
    hw::DatumSpec d;
    if (fam == "inner" || fam == "outer") {
        require_key(j, "k", "problem.datum");
        double k = j.at("k").get<double>();
        d = fam == "inner" ? hw::DatumSpec::inner(mu, k) : hw::DatumSpec::outer(mu, k);
    } else if (fam == "plain") {
        if (j.contains("k"))
            throw std::invalid_argument("problem.datum.k is not used by the plain family");
        d = hw::DatumSpec::plain(mu);
    } else {
        throw std::invalid_argument("problem.datum.family must be inner, outer, or plain");
    }
    if (j.contains("mollify_radius")) {
        if (fam != "inner")
            throw std::invalid_argument(
                "problem.datum.mollify_radius applies to the inner family only");
        d.mollify_radius = j.at("mollify_radius").get<double>();
    }
    return d;
}

hw::ProblemSpec parse_problem(const ordered_json& j) {
    check_keys(j, {"n_dim", "p", "lambda", "mass", "alpha", "datum"}, "problem");
    for (const char* req : {"n_dim", "p", "lambda", "datum"}) require_key(j, req, "problem");
    int n = j.at("n_dim").get<int>();
    double p = j.at("p").get<double>();
    auto lambda = parse_complex(j.at("lambda"), "problem.lambda");
    double mass = j.value("mass", 0.0);
    std::optional<std::complex<double>> alpha;
    if (j.contains("alpha")) alpha = parse_complex(j.at("alpha"), "problem.alpha");
    return hw::make_problem(n, p, lambda, mass, parse_datum(j.at("datum")), alpha);
}

ordered_json complex_cfg(std::complex<double> z) {
    return ordered_json::array({z.real(), z.imag()});
}

const char* family_name(hw::DatumSpec::Kind k) {
    switch (k) {
        case hw::DatumSpec::Kind::inner_singular: return "inner";
        case hw::DatumSpec::Kind::outer_decay: return "outer";
        case hw::DatumSpec::Kind::plain_integrable: return "plain";
        case hw::DatumSpec::Kind::grid_field: return "grid";
    }
    return "unknown";
}

ordered_json problem_cfg(const hw::ProblemSpec& s) {
    ordered_json j;
    j["n_dim"] = s.n_dim;
    j["p"] = s.p;
    j["lambda"] = complex_cfg(s.lambda);
    j["mass"] = s.mass;
    j["alpha"] = complex_cfg(s.alpha);
    ordered_json d;
    d["family"] = family_name(s.datum.kind);
    d["mu"] = s.datum.mu;
    if (s.datum.kind == hw::DatumSpec::Kind::inner_singular ||
        s.datum.kind == hw::DatumSpec::Kind::outer_decay)
        d["k"] = s.datum.k;
    if (s.datum.kind == hw::DatumSpec::Kind::inner_singular)
        d["mollify_radius"] = s.datum.mollify_radius;
    j["datum"] = d;
    return j;
}

/// Flatten the effective config into the artifact meta block so every output
/// file carries the full parameter echo.
void flatten_into(hw::MetaBlock& meta, const ordered_json& j, const std::string& prefix) {
    if (j.is_object()) {
        for (const auto& item : j.items())
            flatten_into(meta, item.value(), prefix.empty() ? item.key() : prefix + "." + item.key());
    } else if (j.is_string()) {
        meta.add(prefix, j.get<std::string>());
    } else {
        meta.add(prefix, j.dump());
    }
}

std::vector<double> geometric(double lo, double hi, int count) {
    std::vector<double> out(count);
    for (int i = 0; i < count; ++i)
        out[i] = lo * std::pow(hi / lo, double(i) / double(count - 1));
    return out;
}

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  // max abs deviation in log space
};

LineFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const std::size_t n = x.size();
    std::vector<double> lx(n), ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0))
            throw std::runtime_error("log-log fit requires positive data");
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    const double d = n * sxx - sx * sx;
    if (d == 0.0) throw std::runtime_error("degenerate abscissa in log-log fit");
    LineFit f;
    f.slope = (n * sxy - sx * sy) / d;
    f.intercept = (sy - f.slope * sx) / n;
    for (std::size_t i = 0; i < n; ++i)
        f.residual = std::max(f.residual, std::abs(ly[i] - f.slope * lx[i] - f.intercept));
    return f;
}

// ------------------------------------------------------------ subcommands --

void run_kernel(int dim, int count, const CommonOpts& opts, OutputTracker& out) {
    hw::KernelTable table = hw::KernelTable::build(dim, static_cast<std::size_t>(count));
    hw::MetaBlock meta;
    meta.add("subcommand", std::string("kernel"));
    meta.add("n_dim", dim);
    meta.add("count", count);
    if (want_csv(opts)) out.write("kernel_table.csv", hw::kernel_table_csv(table, meta));
    if (want_json(opts)) out.write("kernel_table.json", hw::kernel_table_json(table, meta));
    const double w = table.weighted_l1(double(dim + 1));
    std::cout << "[kernel] n=" << dim << " points=" << count << " range=["
              << short_double(table.radii().front()) << "," << short_double(table.radii().back())
              << "] weighted_l1(q=" << dim + 1 << ")=" << hw::format_double(w) << "\n";
}

void run_estimate(int dim, double q, std::optional<double> mass, double radius,
                  const CommonOpts& opts, OutputTracker& out) {
    if (!mass) {
        hw::EstimateReport r = hw::weight_decay_report(dim, q);
        hw::MetaBlock meta;
        meta.add("subcommand", std::string("estimate"));
        meta.add("n_dim", dim);
        meta.add("q", q);
        if (want_csv(opts)) out.write("estimate_decay.csv", hw::estimate_report_csv(r, meta));
        if (want_json(opts)) out.write("estimate_decay.json", hw::estimate_report_json(r, meta));
        std::cout << "[estimate] id=" << r.id << " n=" << dim << " q=" << short_double(q)
                  << " regime=" << r.regime << " tail_slope=" << short_double(r.loglog_slope)
                  << " sup_constant=" << hw::format_double(r.empirical_constant)
                  << " guard=" << (r.grid_guard_ok ? "ok" : "coarse")
                  << " pass=" << (r.pass ? "yes" : "no") << "\n";
        return;
    }
    hw::MassiveEstimateSet set = hw::massive_estimate_report(dim, q, *mass, radius);
    hw::MetaBlock meta;
    meta.add("subcommand", std::string("estimate"));
    meta.add("n_dim", dim);
    meta.add("q", q);
    meta.add("mass", *mass);
    meta.add("radius", radius);
    if (want_csv(opts)) {
        out.write("estimate_remainder.csv", hw::estimate_report_csv(set.remainder_bound, meta));
        out.write("estimate_massive.csv", hw::estimate_report_csv(set.massive_pointwise, meta));
        out.write("estimate_scaled.csv", hw::estimate_report_csv(set.scaled_form, meta));
    }
    if (want_json(opts)) out.write("estimate_massive.json", hw::massive_estimate_set_json(set, meta));
    auto flag = [](const hw::EstimateReport& r) { return r.pass ? "pass" : "FAIL"; };
    std::cout << "[estimate] n=" << dim << " q=" << short_double(q) << " m=" << short_double(*mass)
              << " R=" << short_double(radius) << " remainder=" << flag(set.remainder_bound)
              << "(C=" << short_double(set.remainder_bound.empirical_constant) << ")"
              << " massive=" << flag(set.massive_pointwise)
              << "(C=" << short_double(set.massive_pointwise.empirical_constant) << ")"
              << " scaled=" << flag(set.scaled_form)
              << "(C=" << short_double(set.scaled_form.empirical_constant) << ")" << "\n";
}

void run_certify(const std::string& config_path, const CommonOpts&, OutputTracker& out) {
    ordered_json cfg = load_config(config_path);
    check_keys(cfg, {"problem", "radius"}, "config");
    require_key(cfg, "problem", "config");
    require_key(cfg, "radius", "config");
    hw::ProblemSpec spec = parse_problem(cfg.at("problem"));
    const double atil = hw::atilde(spec.n_dim);

    std::optional<hw::BlowupCertificate> cert;
    ordered_json radius_echo;
    std::vector<double> radii;  // the grid actually examined
    const ordered_json& rj = cfg.at("radius");
    if (rj.is_number()) {
        double R = rj.get<double>();
        radii = {R};
        radius_echo = R;
        cert = hw::certify(spec, R, atil);
    } else {
        check_keys(rj, {"min", "max", "count"}, "radius");
        for (const char* req : {"min", "max", "count"}) require_key(rj, req, "radius");
        double rmin = rj.at("min").get<double>();
        double rmax = rj.at("max").get<double>();
        int count = rj.at("count").get<int>();
        if (count < 2) throw std::invalid_argument("radius.count must be >= 2");
        if (!(rmin > 0.0) || !(rmin < rmax))
            throw std::invalid_argument("radius range needs 0 < min < max");
        radii = geometric(rmin, rmax, count);
        radius_echo = ordered_json{{"min", rmin}, {"max", rmax}, {"count", count}};
        cert = hw::optimize_radius(spec, rmin, rmax, count, atil);
    }

    ordered_json eff;
    eff["problem"] = problem_cfg(spec);
    eff["radius"] = radius_echo;
    hw::MetaBlock meta;
    meta.add("subcommand", std::string("certify"));
    flatten_into(meta, eff, "");
    out.write("effective_config.json", eff.dump(2) + "\n");

    if (cert) {
        out.write("certificate.json", hw::certificate_json(*cert, spec, meta));
        std::cout << "[certify] R=" << short_double(cert->R)
                  << " M0=" << short_double(cert->M0)
                  << " threshold=" << short_double(cert->threshold)
                  << " Tbound=" << hw::format_double(cert->Tbound)
                  << " C1=" << short_double(cert->C1) << " C2=" << short_double(cert->C2)
                  << "\n";
        return;
    }
    // Report the least-deficient radius on the examined grid.
    double best_R = radii.front();
    double best_gap = -std::numeric_limits<double>::infinity();
    double best_M0 = 0.0, best_thr = 0.0;
    for (double R : radii) {
        double M0 = hw::weighted_mass(spec.datum, spec.n_dim, spec.alpha, R);
        double thr = hw::certification_threshold(spec, R, atil);
        if (M0 - thr > best_gap) {
            best_gap = M0 - thr;
            best_R = R;
            best_M0 = M0;
            best_thr = thr;
        }
    }
    out.write("certificate.json", hw::no_certificate_json(spec, best_R, best_M0, best_thr, meta));
    std::cout << "[certify] no certificate: M0=" << short_double(best_M0)
              << " <= threshold=" << short_double(best_thr) << " at R=" << short_double(best_R)
              << " (initial mass too small at every examined radius)\n";
}

struct SweepRow {
    double x = 0.0;
    double R_star = 0.0;
    double Tbound = 0.0;
    double t_blowup = std::numeric_limits<double>::quiet_NaN();
};

void run_scaling(const std::string& config_path, const CommonOpts& opts, OutputTracker& out) {
    ordered_json cfg = load_config(config_path);
    check_keys(cfg, {"problem", "sweep", "simulate", "sim"}, "config");
    require_key(cfg, "problem", "config");
    require_key(cfg, "sweep", "config");
    hw::ProblemSpec spec = parse_problem(cfg.at("problem"));

    const ordered_json& sw = cfg.at("sweep");
    check_keys(sw, {"parameter", "start", "stop", "count"}, "sweep");
    for (const char* req : {"parameter", "start", "stop", "count"}) require_key(sw, req, "sweep");
    const std::string param = sw.at("parameter").get<std::string>();
    const double start = sw.at("start").get<double>();
    const double stop = sw.at("stop").get<double>();
    const int count = sw.at("count").get<int>();
    if (count < 2) throw std::invalid_argument("sweep.count must be >= 2");
    if (!(start > 0.0) || !(start < stop))
        throw std::invalid_argument("sweep range needs 0 < start < stop");
    if (param != "mu" && param != "R")
        throw std::invalid_argument("sweep.parameter must be 'mu' or 'R'");

    const bool do_sim = cfg.value("simulate", false);
    if (do_sim && param != "mu")
        throw std::invalid_argument("the simulate flag requires a mu sweep");
    if (cfg.contains("sim") && !do_sim)
        throw std::invalid_argument("config has a sim section but simulate is not enabled");

    const double atil = hw::atilde(spec.n_dim);
    const std::vector<double> xs = geometric(start, stop, count);

    ordered_json eff;
    eff["problem"] = problem_cfg(spec);
    eff["sweep"] =
        ordered_json{{"parameter", param}, {"start", start}, {"stop", stop}, {"count", count}};
    eff["simulate"] = do_sim;

    std::optional<hw::SpectralGrid> sim_grid;
    hw::SimConfig sim_proto;
    double sim_mollify = 0.0;
    if (do_sim) {
        require_key(cfg, "sim", "config");
        const ordered_json& sj = cfg.at("sim");
        check_keys(sj,
                   {"half_width", "points_per_axis", "dt_initial", "dt_min", "t_max",
                    "local_error_target", "blowup_sup_threshold", "mollify_radius"},
                   "sim");
        require_key(sj, "half_width", "sim");
        require_key(sj, "points_per_axis", "sim");
        require_key(sj, "t_max", "sim");
        sim_grid = hw::make_grid(spec.n_dim, sj.at("half_width").get<double>(),
                                 sj.at("points_per_axis").get<int>());
        sim_proto.grid = *sim_grid;
        sim_proto.dt_initial = sj.value("dt_initial", sim_proto.dt_initial);
        sim_proto.dt_min = sj.value("dt_min", sim_proto.dt_min);
        sim_proto.t_max = sj.at("t_max").get<double>();
        sim_proto.local_error_target =
            sj.value("local_error_target", sim_proto.local_error_target);
        sim_proto.blowup_sup_threshold =
            sj.value("blowup_sup_threshold", sim_proto.blowup_sup_threshold);
        sim_mollify = sj.value("mollify_radius", sim_grid->spacing());
        ordered_json es;
        es["half_width"] = sim_grid->half_width();
        es["points_per_axis"] = sim_grid->points_per_axis();
        es["dt_initial"] = sim_proto.dt_initial;
        es["dt_min"] = sim_proto.dt_min;
        es["t_max"] = sim_proto.t_max;
        es["local_error_target"] = sim_proto.local_error_target;
        es["blowup_sup_threshold"] = sim_proto.blowup_sup_threshold;
        es["mollify_radius"] = sim_mollify;
        eff["sim"] = es;
    }

    hw::MetaBlock meta;
    meta.add("subcommand", std::string("scaling"));
    flatten_into(meta, eff, "");
    out.write("effective_config.json", eff.dump(2) + "\n");

    std::vector<SweepRow> rows(xs.size());
    std::string summary_tail;

    if (param == "mu") {
        // Corollary sweep: closed-form matched radius per mu; sweep elements
        // are independent, so dispatch them in parallel.
        double theory_exponent = 0.0;
        {
            hw::ProblemSpec probe = spec;
            probe.datum.mu = xs.front();
            theory_exponent = hw::corollary_radii(probe, atil).exponent;
        }
        auto element = [&](double mu) {
            hw::ProblemSpec sp = spec;
            sp.datum.mu = mu;
            hw::CorollaryScales sc = hw::corollary_radii(sp, atil);
            if (std::abs(sp.mass) > sc.mass_limit)
                throw std::invalid_argument(
                    "mass " + hw::format_double(std::abs(sp.mass)) +
                    " exceeds the validity limit 1/R_star = " +
                    hw::format_double(sc.mass_limit) + " at mu = " + hw::format_double(mu));
            SweepRow row{mu, sc.R_star, sc.Tbound_at_R_star,
                         std::numeric_limits<double>::quiet_NaN()};
            if (sim_grid) {
                sp.datum.mollify_radius =
                    sp.datum.kind == hw::DatumSpec::Kind::inner_singular ? sim_mollify : 0.0;
                hw::SimConfig sc2 = sim_proto;
                sc2.functional_radius = sc.R_star;
                hw::TrajectoryRecord traj = hw::evolve(sp, sc2);
                if (traj.blowup_time) row.t_blowup = *traj.blowup_time;
            }
            return row;
        };
        std::vector<std::future<SweepRow>> futures;
        futures.reserve(xs.size());
        for (double mu : xs)
            futures.push_back(std::async(std::launch::async, element, mu));
        for (std::size_t i = 0; i < futures.size(); ++i) rows[i] = futures[i].get();

        std::vector<double> mu_v(xs), t_v(xs.size());
        for (std::size_t i = 0; i < rows.size(); ++i) t_v[i] = rows[i].Tbound;
        LineFit fit = fit_loglog(mu_v, t_v);

        std::vector<std::vector<double>> table;
        std::vector<std::string> columns = {"mu", "R_star", "Tbound"};
        if (do_sim) columns.push_back("t_blowup");
        for (const auto& r : rows) {
            std::vector<double> row = {r.x, r.R_star, r.Tbound};
            if (do_sim) row.push_back(r.t_blowup);
            table.push_back(std::move(row));
        }
        if (want_csv(opts)) out.write("scaling.csv", hw::scaling_sweep_csv(table, columns, meta));
        if (want_json(opts)) {
            ordered_json j;
            ordered_json mj;
            mj["version"] = hw::version_string;
            ordered_json params = ordered_json::object();
            for (const auto& [k, v] : meta.entries) params[k] = v;
            mj["parameters"] = params;
            j["meta"] = mj;
            j["fit"] = ordered_json{{"slope", fit.slope},
                                    {"intercept", fit.intercept},
                                    {"residual", fit.residual},
                                    {"theory_exponent", theory_exponent}};
            ordered_json data;
            for (std::size_t c = 0; c < columns.size(); ++c) {
                std::vector<double> col(table.size());
                for (std::size_t i = 0; i < table.size(); ++i) col[i] = table[i][c];
                data[columns[c]] = col;
            }
            j["rows"] = data;
            out.write("scaling.json", j.dump(2) + "\n");
        }
        int blowups = 0;
        for (const auto& r : rows)
            if (std::isfinite(r.t_blowup)) ++blowups;
        std::cout << "[scaling] family=" << family_name(spec.datum.kind) << " n=" << spec.n_dim
                  << " p=" << short_double(spec.p) << " k=" << short_double(spec.datum.k)
                  << " points=" << count << " slope=" << hw::format_double(fit.slope)
                  << " theory=" << hw::format_double(theory_exponent)
                  << " residual=" << short_double(fit.residual);
        if (do_sim) std::cout << " blowups=" << blowups << "/" << count;
        std::cout << "\n";
        return;
    }

    // R sweep: threshold/Tbound profile of a fixed datum across functional radii.
    std::vector<std::vector<double>> table;
    const std::vector<std::string> columns = {"R", "M0", "threshold", "Tbound"};
    std::optional<hw::BlowupCertificate> best;
    for (double R : xs) {
        double M0 = hw::weighted_mass(spec.datum, spec.n_dim, spec.alpha, R);
        double thr = hw::certification_threshold(spec, R, atil);
        auto cert = hw::certify(spec, R, atil);
        double tb = cert ? cert->Tbound : std::numeric_limits<double>::quiet_NaN();
        if (cert && (!best || cert->Tbound < best->Tbound)) best = cert;
        table.push_back({R, M0, thr, tb});
    }
    if (want_csv(opts)) out.write("scaling.csv", hw::scaling_sweep_csv(table, columns, meta));
    if (want_json(opts)) {
        ordered_json j;
        ordered_json mj;
        mj["version"] = hw::version_string;
        ordered_json params = ordered_json::object();
        for (const auto& [k, v] : meta.entries) params[k] = v;
        mj["parameters"] = params;
        j["meta"] = mj;
        if (best)
            j["best"] = ordered_json{{"R", best->R}, {"Tbound", best->Tbound}};
        else
            j["best"] = nullptr;
        ordered_json data;
        for (std::size_t c = 0; c < columns.size(); ++c) {
            std::vector<double> col(table.size());
            for (std::size_t i = 0; i < table.size(); ++i) col[i] = table[i][c];
            data[columns[c]] = col;
        }
        j["rows"] = data;
        out.write("scaling.json", j.dump(2) + "\n");
    }
    if (best)
        std::cout << "[scaling] R-sweep points=" << count
                  << " best_R=" << short_double(best->R)
                  << " Tbound=" << hw::format_double(best->Tbound) << "\n";
    else
        std::cout << "[scaling] R-sweep points=" << count << " no certificate in range ["
                  << short_double(start) << "," << short_double(stop) << "]\n";
}

void run_simulate(const std::string& config_path, const CommonOpts& opts, OutputTracker& out) {
    ordered_json cfg = load_config(config_path);
    check_keys(cfg, {"problem", "grid", "time", "functional"}, "config");
    require_key(cfg, "problem", "config");
    require_key(cfg, "grid", "config");
    hw::ProblemSpec spec = parse_problem(cfg.at("problem"));

    const ordered_json& gj = cfg.at("grid");
    check_keys(gj, {"half_width", "points_per_axis"}, "grid");
    require_key(gj, "half_width", "grid");
    require_key(gj, "points_per_axis", "grid");
    hw::SpectralGrid grid = hw::make_grid(spec.n_dim, gj.at("half_width").get<double>(),
                                          gj.at("points_per_axis").get<int>());

    hw::SimConfig sim;
    sim.grid = grid;
    if (cfg.contains("time")) {
        const ordered_json& tj = cfg.at("time");
        check_keys(tj,
                   {"dt_initial", "dt_min", "t_max", "local_error_target",
                    "blowup_sup_threshold", "fixed_step", "free_flow", "dealias"},
                   "time");
        sim.dt_initial = tj.value("dt_initial", sim.dt_initial);
        sim.dt_min = tj.value("dt_min", sim.dt_min);
        sim.t_max = tj.value("t_max", sim.t_max);
        sim.local_error_target = tj.value("local_error_target", sim.local_error_target);
        sim.blowup_sup_threshold = tj.value("blowup_sup_threshold", sim.blowup_sup_threshold);
        sim.fixed_step = tj.value("fixed_step", sim.fixed_step);
        sim.free_flow = tj.value("free_flow", sim.free_flow);
        sim.dealias = tj.value("dealias", sim.dealias);
    }
    bool do_certify = true;
    if (cfg.contains("functional")) {
        const ordered_json& fj = cfg.at("functional");
        check_keys(fj, {"radius", "certify"}, "functional");
        sim.functional_radius = fj.value("radius", sim.functional_radius);
        do_certify = fj.value("certify", true);
    }

    ordered_json eff;
    eff["problem"] = problem_cfg(spec);
    eff["grid"] =
        ordered_json{{"half_width", grid.half_width()}, {"points_per_axis", grid.points_per_axis()}};
    eff["time"] = ordered_json{{"dt_initial", sim.dt_initial},
                               {"dt_min", sim.dt_min},
                               {"t_max", sim.t_max},
                               {"local_error_target", sim.local_error_target},
                               {"blowup_sup_threshold", sim.blowup_sup_threshold},
                               {"fixed_step", sim.fixed_step},
                               {"free_flow", sim.free_flow},
                               {"dealias", sim.dealias}};
    eff["functional"] =
        ordered_json{{"radius", sim.functional_radius}, {"certify", do_certify}};
    hw::MetaBlock meta;
    meta.add("subcommand", std::string("simulate"));
    flatten_into(meta, eff, "");
    out.write("effective_config.json", eff.dump(2) + "\n");

    hw::TrajectoryRecord traj = hw::evolve(spec, sim);

    std::optional<hw::BlowupCertificate> cert;
    std::optional<hw::OdeInequalityReport> ode;
    if (do_certify) {
        cert = hw::certify(spec, sim.functional_radius, hw::atilde(spec.n_dim));
        if (cert) {
            ode = hw::ode_inequality_report(traj, *cert, spec.p);
            out.write("certificate.json", hw::certificate_json(*cert, spec, meta));
        } else {
            double M0 = hw::weighted_mass(spec.datum, spec.n_dim, spec.alpha,
                                          sim.functional_radius);
            double thr =
                hw::certification_threshold(spec, sim.functional_radius, hw::atilde(spec.n_dim));
            out.write("certificate.json",
                      hw::no_certificate_json(spec, sim.functional_radius, M0, thr, meta));
        }
    }

    if (want_csv(opts)) out.write("trajectory.csv", hw::trajectory_csv(traj, meta));
    if (want_json(opts))
        out.write("simulation.json",
                  hw::trajectory_summary_json(traj, ode ? &*ode : nullptr, meta));

    const char* reason = traj.terminated == hw::TerminationReason::blowup ? "blowup"
                         : traj.terminated == hw::TerminationReason::dt_underflow
                             ? "dt_underflow"
                             : "t_max";
    std::cout << "[simulate] terminated=" << reason
              << " t_end=" << short_double(traj.times.empty() ? 0.0 : traj.times.back())
              << " steps=" << traj.accepted_steps << "(+" << traj.rejected_steps << " rejected)"
              << " sup=" << short_double(traj.linf.empty() ? 0.0 : traj.linf.back())
              << " M_R=" << short_double(traj.M.empty() ? 0.0 : traj.M.back());
    if (traj.blowup_time) std::cout << " t_blowup=" << hw::format_double(*traj.blowup_time);
    if (cert) std::cout << " Tbound=" << hw::format_double(cert->Tbound);
    if (ode)
        std::cout << " ode_fraction=" << short_double(ode->fraction)
                  << (ode->integrated_ok ? " integrated=ok" : " integrated=VIOLATED");
    std::cout << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for half-wave blow-up machinery"};
    app.set_version_flag("--version", hw::version_string);
    app.require_subcommand(1);
    app.fallthrough();

    CommonOpts common;
    app.add_option("--out", common.out_dir, "output directory (created if missing)")
        ->capture_default_str();
    app.add_option("--format", common.format, "tabular artifact format")
        ->check(CLI::IsMember({"csv", "json", "both"}))
        ->capture_default_str();
    app.add_flag("--seedless", common.seedless,
                 "run without random seeds (always on; every run is deterministic)");

    int k_dim = 1, k_count = 160;
    CLI::App* kernel = app.add_subcommand("kernel", "tabulate the decay kernel");
    kernel->add_option("--dim", k_dim, "space dimension")->required()->check(CLI::Range(1, 3));
    kernel->add_option("--count", k_count, "number of radii")->check(CLI::Range(16, 100000))
        ->capture_default_str();

    int e_dim = 1;
    double e_q = 2.0, e_radius = 1.0;
    std::optional<double> e_mass;
    CLI::App* estimate = app.add_subcommand("estimate", "weighted decay / operator bound reports");
    estimate->add_option("--dim", e_dim, "space dimension")->required()->check(CLI::Range(1, 3));
    estimate->add_option("--q", e_q, "weight exponent")->required();
    auto* mass_opt = estimate->add_option("--mass", e_mass, "mass parameter (enables the bound checks)");
    estimate->add_option("--radius", e_radius, "rescaling radius for the scaled bound")
        ->needs(mass_opt)
        ->capture_default_str();

    std::string c_config, sc_config, si_config;
    CLI::App* certify = app.add_subcommand("certify", "blow-up certificate from a problem config");
    certify->add_option("config", c_config, "JSON config file")
        ->required()
        ->check(CLI::ExistingFile);
    CLI::App* scaling = app.add_subcommand("scaling", "lifespan scaling sweep");
    scaling->add_option("config", sc_config, "JSON config file")
        ->required()
        ->check(CLI::ExistingFile);
    CLI::App* simulate = app.add_subcommand("simulate", "time evolution on a periodic grid");
    simulate->add_option("config", si_config, "JSON config file")
        ->required()
        ->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    std::optional<OutputTracker> tracker;
    try {
        tracker.emplace(common.out_dir);
        if (app.got_subcommand(kernel)) run_kernel(k_dim, k_count, common, *tracker);
        else if (app.got_subcommand(estimate))
            run_estimate(e_dim, e_q, e_mass, e_radius, common, *tracker);
        else if (app.got_subcommand(certify)) run_certify(c_config, common, *tracker);
        else if (app.got_subcommand(scaling)) run_scaling(sc_config, common, *tracker);
        else if (app.got_subcommand(simulate)) run_simulate(si_config, common, *tracker);
        return 0;
    } catch (const std::invalid_argument& e) {
        if (tracker) tracker->discard_all();
        std::cerr << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        if (tracker) tracker->discard_all();
        std::cerr << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const std::out_of_range& e) {
        if (tracker) tracker->discard_all();
        std::cerr << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const ordered_json::exception& e) {
        if (tracker) tracker->discard_all();
        std::cerr << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        if (tracker) tracker->discard_all();
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    }
}
