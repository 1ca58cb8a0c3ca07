#pragma once

#include <filesystem>
#include <ostream>
#include <string>

#include "damped_euler/characteristics.hpp"
#include "damped_euler/damping.hpp"
#include "damped_euler/field_solver.hpp"
#include "damped_euler/lifespan.hpp"
#include "damped_euler/oracle.hpp"

namespace damped_euler {

/// `precision` significant digits, "nan"/"inf"/"-inf" for non-finite values.
std::string format_number(double value, int precision);

void write_timeseries_csv(std::ostream& out, const TimeSeries& series, int precision = 12);
/// Columns t,x,u,c,r,s,a,A,Q_or_Y; Q_or_Y is "nan" past the end of the Riccati history.
void write_path_csv(std::ostream& out, const CharPath& path, const RiccatiState& riccati,
                    int precision = 12);
void write_sweep_csv(std::ostream& out, const SweepResult& sweep, int precision = 12);

std::string blowup_report_json(const BlowupReport& report);
std::string fit_json(const ScalingFit& fit);
std::string assumption_report_json(const AssumptionReport& report, const DampingSpec& spec);
std::string oracle_comparison_json(const OracleComparison& comparison);
std::string riccati_json(const RiccatiState& state, RiccatiMode mode, GradientForm form,
                         double crosscheck);

/// Writes `content` to `path`, creating parent directories. Throws IoError.
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace damped_euler
