#include "halfwave/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "halfwave/version.hpp"

namespace halfwave {

using ordered_json = nlohmann::ordered_json;

void MetaBlock::add(std::string key, std::string value) {
    entries.emplace_back(std::move(key), std::move(value));
}
void MetaBlock::add(std::string key, double value) {
    entries.emplace_back(std::move(key), format_double(value));
}
void MetaBlock::add(std::string key, int value) {
    entries.emplace_back(std::move(key), std::to_string(value));
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

void meta_header(std::ostringstream& os, const MetaBlock& meta) {
    os << "# halfwave " << version_string << "\n";
    for (const auto& [k, v] : meta.entries) os << "# " << k << " = " << v << "\n";
}

ordered_json meta_json(const MetaBlock& meta) {
    ordered_json j;
    j["version"] = version_string;
    ordered_json params = ordered_json::object();
    for (const auto& [k, v] : meta.entries) params[k] = v;
    j["parameters"] = params;
    return j;
}

ordered_json complex_json(std::complex<double> z) {
    return ordered_json::array({z.real(), z.imag()});
}

const char* kind_name(DatumSpec::Kind k) {
    switch (k) {
        case DatumSpec::Kind::grid_field: return "grid-field";
        case DatumSpec::Kind::inner_singular: return "inner-singular";
        case DatumSpec::Kind::outer_decay: return "outer-decay";
        case DatumSpec::Kind::plain_integrable: return "plain-integrable";
    }
    return "unknown";
}

const char* reason_name(TerminationReason r) {
    switch (r) {
        case TerminationReason::reached_t_max: return "t_max";
        case TerminationReason::blowup: return "blowup";
        case TerminationReason::dt_underflow: return "dt_underflow";
    }
    return "unknown";
}

ordered_json problem_json(const ProblemSpec& s) {
    ordered_json j;
    j["n_dim"] = s.n_dim;
    j["p"] = s.p;
    j["lambda"] = complex_json(s.lambda);
    j["mass"] = s.mass;
    j["alpha"] = complex_json(s.alpha);
    ordered_json d;
    d["kind"] = kind_name(s.datum.kind);
    d["mu"] = s.datum.mu;
    d["k"] = s.datum.k;
    d["mollify_radius"] = s.datum.mollify_radius;
    if (s.datum.kind == DatumSpec::Kind::grid_field && s.datum.field) {
        ordered_json g;
        g["dim"] = s.datum.field->grid.dim();
        g["half_width"] = s.datum.field->grid.half_width();
        g["points_per_axis"] = s.datum.field->grid.points_per_axis();
        d["grid"] = g;
    }
    j["datum"] = d;
    return j;
}

ordered_json report_json_body(const EstimateReport& r) {
    ordered_json j;
    j["id"] = r.id;
    j["n_dim"] = r.n_dim;
    j["q"] = r.q;
    j["mass"] = r.mass;
    j["radius"] = r.radius;
    j["regime"] = r.regime;
    j["empirical_constant"] = r.empirical_constant;
    j["prescribed_bound"] = r.prescribed_bound;
    j["slack"] = r.slack;
    j["loglog_slope"] = r.loglog_slope;
    j["grid_guard_ok"] = r.grid_guard_ok;
    j["pass"] = r.pass;
    j["samples"] = r.samples;
    j["lhs"] = r.lhs;
    j["rhs_shape"] = r.rhs_shape;
    j["ratio"] = r.ratio;
    return j;
}

ordered_json certificate_body(const BlowupCertificate& c) {
    ordered_json j;
    j["R"] = c.R;
    j["alpha"] = complex_json(c.alpha);
    j["M0"] = c.M0;
    j["threshold"] = c.threshold;
    j["Ctilde"] = c.Ctilde;
    j["D"] = c.D;
    j["Tbound"] = c.Tbound;
    j["C1"] = c.C1;
    j["C2"] = c.C2;
    return j;
}

}  // namespace

std::string kernel_table_csv(const KernelTable& t, const MetaBlock& meta) {
    std::ostringstream os;
    meta_header(os, meta);
    os << "r,K_r,n_dim\n";
    for (std::size_t i = 0; i < t.radii().size(); ++i)
        os << format_double(t.radii()[i]) << ',' << format_double(t.values()[i]) << ','
           << t.dim() << "\n";
    return os.str();
}

std::string estimate_report_csv(const EstimateReport& r, const MetaBlock& meta) {
    std::ostringstream os;
    meta_header(os, meta);
    os << "x,lhs,rhs_shape,ratio\n";
    for (std::size_t i = 0; i < r.samples.size(); ++i)
        os << format_double(r.samples[i]) << ',' << format_double(r.lhs[i]) << ','
           << format_double(r.rhs_shape[i]) << ',' << format_double(r.ratio[i]) << "\n";
    return os.str();
}

std::string trajectory_csv(const TrajectoryRecord& t, const MetaBlock& meta) {
    std::ostringstream os;
    meta_header(os, meta);
    os << "t,M_R,l2,linf\n";
    for (std::size_t i = 0; i < t.times.size(); ++i)
        os << format_double(t.times[i]) << ',' << format_double(t.M[i]) << ','
           << format_double(t.l2[i]) << ',' << format_double(t.linf[i]) << "\n";
    return os.str();
}

std::string scaling_sweep_csv(const std::vector<std::vector<double>>& rows,
                              const std::vector<std::string>& columns, const MetaBlock& meta) {
    std::ostringstream os;
    meta_header(os, meta);
    for (std::size_t c = 0; c < columns.size(); ++c)
        os << columns[c] << (c + 1 < columns.size() ? "," : "");
    os << "\n";
    for (const auto& row : rows) {
        if (row.size() != columns.size())
            throw std::invalid_argument("scaling row width does not match header");
        for (std::size_t c = 0; c < row.size(); ++c)
            os << format_double(row[c]) << (c + 1 < row.size() ? "," : "");
        os << "\n";
    }
    return os.str();
}

std::string estimate_report_json(const EstimateReport& r, const MetaBlock& meta) {
    ordered_json j;
    j["meta"] = meta_json(meta);
    j["report"] = report_json_body(r);
    return j.dump(2) + "\n";
}

std::string massive_estimate_set_json(const MassiveEstimateSet& s, const MetaBlock& meta) {
    ordered_json j;
    j["meta"] = meta_json(meta);
    j["remainder_bound"] = report_json_body(s.remainder_bound);
    j["massive_pointwise"] = report_json_body(s.massive_pointwise);
    j["scaled_form"] = report_json_body(s.scaled_form);
    return j.dump(2) + "\n";
}

std::string certificate_json(const BlowupCertificate& c, const ProblemSpec& s,
                             const MetaBlock& meta) {
    ordered_json j;
    j["meta"] = meta_json(meta);
    j["certificate"] = certificate_body(c);
    j["problem"] = problem_json(s);
    return j.dump(2) + "\n";
}

std::string no_certificate_json(const ProblemSpec& s, double R, double M0, double threshold,
                                const MetaBlock& meta) {
    ordered_json j;
    j["meta"] = meta_json(meta);
    j["certificate"] = nullptr;
    j["R"] = R;
    j["M0"] = M0;
    j["threshold"] = threshold;
    j["problem"] = problem_json(s);
    return j.dump(2) + "\n";
}

std::string trajectory_summary_json(const TrajectoryRecord& t, const OdeInequalityReport* ode,
                                    const MetaBlock& meta) {
    ordered_json j;
    j["meta"] = meta_json(meta);
    ordered_json s;
    s["terminated"] = reason_name(t.terminated);
    if (t.blowup_time)
        s["blowup_time"] = *t.blowup_time;
    else
        s["blowup_time"] = nullptr;
    s["accepted_steps"] = t.accepted_steps;
    s["rejected_steps"] = t.rejected_steps;
    s["final_time"] = t.times.empty() ? 0.0 : t.times.back();
    s["final_l2"] = t.l2.empty() ? 0.0 : t.l2.back();
    s["final_linf"] = t.linf.empty() ? 0.0 : t.linf.back();
    s["final_M"] = t.M.empty() ? 0.0 : t.M.back();
    s["functional_radius"] = t.functional_radius;
    s["alpha"] = complex_json(t.alpha);
    if (t.refinement_deviation) s["refinement_deviation"] = *t.refinement_deviation;
    j["summary"] = s;
    if (ode) {
        ordered_json o;
        o["checked"] = ode->checked;
        o["satisfied"] = ode->satisfied;
        o["fraction"] = ode->fraction;
        o["min_slack"] = ode->min_slack;
        o["integrated_checked"] = ode->integrated_checked;
        o["integrated_satisfied"] = ode->integrated_satisfied;
        o["integrated_ok"] = ode->integrated_ok;
        o["beyond_ode_horizon"] = ode->beyond_ode_horizon;
        j["ode_check"] = o;
    }
    return j.dump(2) + "\n";
}

std::string kernel_table_json(const KernelTable& t, const MetaBlock& meta) {
    ordered_json j;
    j["meta"] = meta_json(meta);
    j["n_dim"] = t.dim();
    j["radii"] = t.radii();
    j["values"] = t.values();
    return j.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace halfwave
