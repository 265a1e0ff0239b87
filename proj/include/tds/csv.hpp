#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tds/estimators.hpp"
#include "tds/montecarlo.hpp"
#include "tds/series.hpp"

namespace tds {

// Series files: header "index,value", UTF-8, LF line endings, strictly
// increasing indices.
void write_series_csv(std::ostream& out, const TimeSeries& series);
void write_series_csv_file(const std::string& path, const TimeSeries& series);
TimeSeries read_series_csv(std::istream& in, const std::string& name = "series");
TimeSeries read_series_csv_file(const std::string& path);

// Weights files: plain numeric rows (factors), comma-separated columns (time).
std::vector<std::vector<double>> read_weights_csv_file(const std::string& path);

// One row per estimator: estimator,u,value,U,E,Cn (blank where not applicable).
void write_estimates_csv(std::ostream& out, const std::vector<EstimateReport>& reports);

// model,param,estimator,true_lambda,mean_estimate,abias,rmse,skipped
void write_results_csv(std::ostream& out, const std::vector<ExperimentResult>& results);
void write_results_csv_file(const std::string& path, const std::vector<ExperimentResult>& results);

// Results columns plus paper_abias,paper_rmse,abs_diff_abias,abs_diff_rmse
void write_comparison_csv(std::ostream& out, const std::vector<ComparisonRow>& rows);
void write_comparison_csv_file(const std::string& path, const std::vector<ComparisonRow>& rows);

// Shortest decimal form that round-trips exactly.
std::string format_double(double value);

}  // namespace tds
