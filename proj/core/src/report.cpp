#include "damped_euler/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "damped_euler/errors.hpp"

namespace damped_euler {

namespace {

using json = nlohmann::ordered_json;

json number_or_null(double value) {
  if (!std::isfinite(value)) return nullptr;
  return value;
}

json optional_number(const std::optional<double>& value) {
  return value ? number_or_null(*value) : json(nullptr);
}

}  // namespace

std::string format_number(double value, int precision) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, value);
  return buf;
}

void write_timeseries_csv(std::ostream& out, const TimeSeries& series, int precision) {
  out << "t,min_u,max_u,max_abs_rx,max_abs_sx,max_abs_ux,max_abs_vx,phi_region\n";
  for (const auto& row : series.rows) {
    out << format_number(row.t, precision) << ',' << format_number(row.min_u, precision) << ','
        << format_number(row.max_u, precision) << ',' << format_number(row.max_abs_rx, precision)
        << ',' << format_number(row.max_abs_sx, precision) << ','
        << format_number(row.max_abs_ux, precision) << ','
        << format_number(row.max_abs_vx, precision) << ','
        << format_number(row.phi_region, precision) << '\n';
  }
}

void write_path_csv(std::ostream& out, const CharPath& path, const RiccatiState& riccati,
                    int precision) {
  out << "t,x,u,c,r,s,a,A,Q_or_Y\n";
  for (std::size_t i = 0; i < path.samples.size(); ++i) {
    const auto& s = path.samples[i];
    const double q = i < riccati.history.size() ? riccati.history[i].second : std::nan("");
    out << format_number(s.t, precision) << ',' << format_number(s.x, precision) << ','
        << format_number(s.u, precision) << ',' << format_number(s.c, precision) << ','
        << format_number(s.r, precision) << ',' << format_number(s.s, precision) << ','
        << format_number(s.a, precision) << ',' << format_number(s.A, precision) << ','
        << format_number(q, precision) << '\n';
  }
}

void write_sweep_csv(std::ostream& out, const SweepResult& sweep, int precision) {
  out << "epsilon,t_stop,t_star,stopped_cause\n";
  for (const auto& row : sweep.rows) {
    out << format_number(row.epsilon, precision) << ',' << format_number(row.t_stop, precision)
        << ',' << format_number(row.t_star ? *row.t_star : std::nan(""), precision) << ','
        << to_string(row.stopped_cause) << '\n';
  }
}

std::string blowup_report_json(const BlowupReport& r) {
  json j;
  j["stopped_cause"] = to_string(r.stopped_cause);
  j["t_stop"] = number_or_null(r.t_stop);
  j["T_star_estimate"] = optional_number(r.T_star_estimate);
  j["fit_error"] = r.fit_error.empty() ? json(nullptr) : json(r.fit_error);
  if (r.fit) {
    j["fit_window_fraction"] = r.fit->window_fraction;
    j["fit_unexplained_variance"] = number_or_null(r.fit->unexplained);
  }
  // Localization only means something when the gradient monitor stopped the run.
  const bool located = r.stopped_cause == StopCause::gradient;
  j["blowup_node_x"] = located ? number_or_null(r.blowup_node_x) : json(nullptr);
  j["peak_quantity"] = located ? json(r.peak_quantity) : json(nullptr);
  j["blowup_inside_region"] = located ? json(r.blowup_inside_region) : json(nullptr);
  j["blowup_depth"] = located ? number_or_null(r.blowup_depth) : json(nullptr);
  j["phi_initial"] = number_or_null(r.phi_initial);
  j["phi_max"] = number_or_null(r.phi_max);
  j["phi_max_ratio"] = number_or_null(r.phi_max_ratio);
  j["g_initial"] = number_or_null(r.g_initial);
  j["g_final"] = number_or_null(r.g_final);
  j["regime_exit"] = r.regime_exit;
  return j.dump(2) + "\n";
}

std::string fit_json(const ScalingFit& fit) {
  json j;
  j["model"] = to_string(fit.model);
  j["exponent_or_rate"] = number_or_null(fit.exponent_or_rate);
  j["r_squared"] = number_or_null(fit.r_squared);
  j["rows_used"] = fit.rows_used;
  j["power_r_squared"] = number_or_null(fit.power_r_squared);
  j["exponential_r_squared"] = number_or_null(fit.exponential_r_squared);
  return j.dump(2) + "\n";
}

std::string assumption_report_json(const AssumptionReport& report, const DampingSpec& spec) {
  json j;
  j["damping"] = spec.describe();
  j["c_a"] = optional_number(report.c_a);
  json violations = json::array();
  for (const auto& v : report.violations) {
    json item;
    item["kind"] = v.kind;
    item["t"] = number_or_null(v.t);
    item["x"] = number_or_null(v.x);
    item["lhs"] = number_or_null(v.lhs);
    item["rhs"] = number_or_null(v.rhs);
    violations.push_back(item);
  }
  j["violations"] = violations;
  j["notes"] = report.notes;
  j["samples"] = report.samples;
  return j.dump(2) + "\n";
}

std::string oracle_comparison_json(const OracleComparison& c) {
  json j;
  j["t_compare"] = c.t_compare;
  j["linf_u"] = c.linf_u;
  j["linf_v"] = c.linf_v;
  j["grids"] = c.grids;
  return j.dump(2) + "\n";
}

std::string riccati_json(const RiccatiState& state, RiccatiMode mode, GradientForm form,
                         double crosscheck) {
  json j;
  j["kind"] = state.kind == RiccatiState::Kind::Q ? "Q" : "Y";
  j["mode"] = mode == RiccatiMode::differential ? "differential" : "volterra";
  j["form"] = form == GradientForm::derived ? "derived" : "swapped";
  j["initial_value"] = state.history.empty() ? json(nullptr) : number_or_null(state.history.front().second);
  j["final_value"] = number_or_null(state.value);
  j["blew_up"] = state.blew_up;
  j["blowup_t"] = state.blew_up ? number_or_null(state.blowup_t) : json(nullptr);
  j["gradient_crosscheck"] = number_or_null(crosscheck);
  return j.dump(2) + "\n";
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) {
      throw IoError("cannot create directory " + path.parent_path().string() + ": " +
                    ec.message());
    }
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("write to " + path.string() + " failed");
}

}  // namespace damped_euler
