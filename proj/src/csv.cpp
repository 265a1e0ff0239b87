#include "tds/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace tds {

namespace {

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // binary keeps LF endings everywhere
    if (!out) {
        throw ValidationError("cannot open '" + path + "' for writing");
    }
    return out;
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("cannot open '" + path + "' for reading");
    }
    return in;
}

double parse_double(const std::string& text, std::size_t line) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        throw ParseError("bad numeric field '" + text + "'", line);
    }
    return value;
}

long parse_long(const std::string& text, std::size_t line) {
    long value = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        throw ParseError("bad index field '" + text + "'", line);
    }
    return value;
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

}  // namespace

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

void write_series_csv(std::ostream& out, const TimeSeries& series) {
    out << "index,value\n";
    long idx = series.start_index;
    for (double v : series.values) {
        out << idx << ',' << format_double(v) << '\n';
        ++idx;
    }
}

void write_series_csv_file(const std::string& path, const TimeSeries& series) {
    auto out = open_output(path);
    write_series_csv(out, series);
}

TimeSeries read_series_csv(std::istream& in, const std::string& name) {
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError("empty file '" + name + "'", 1);
    }
    if (strip_cr(line) != "index,value") {
        throw ParseError("expected header 'index,value' in '" + name + "'", 1);
    }
    std::vector<double> values;
    long start_index = 1;
    long prev_index = 0;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw ParseError("expected 'index,value' row", line_no);
        }
        const long idx = parse_long(line.substr(0, comma), line_no);
        const double v = parse_double(line.substr(comma + 1), line_no);
        if (values.empty()) {
            start_index = idx;
        } else if (idx <= prev_index) {
            throw ParseError("non-monotone index " + std::to_string(idx), line_no);
        }
        prev_index = idx;
        values.push_back(v);
    }
    if (values.size() < 2) {
        throw ParseError("series in '" + name + "' has fewer than 2 rows", line_no);
    }
    return TimeSeries::create(std::move(values), start_index);
}

TimeSeries read_series_csv_file(const std::string& path) {
    auto in = open_input(path);
    return read_series_csv(in, path);
}

std::vector<std::vector<double>> read_weights_csv_file(const std::string& path) {
    auto in = open_input(path);
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) {
            row.push_back(parse_double(field, line_no));
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw ParseError("ragged weights row in '" + path + "'", line_no);
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        throw ParseError("empty weights file '" + path + "'", 1);
    }
    return rows;
}

void write_estimates_csv(std::ostream& out, const std::vector<EstimateReport>& reports) {
    out << "estimator,u,value,U,E,Cn\n";
    for (const auto& r : reports) {
        out << estimator_name(r.estimator) << ','
            << (r.estimator == Estimator::TIE ? "" : format_double(r.level.u)) << ','
            << format_double(r.value) << ',';
        if (r.counts) {
            out << r.counts->upcrossings << ',' << r.counts->exceedances;
        } else {
            out << ',';
        }
        out << ',';
        if (r.copula_diag) out << format_double(*r.copula_diag);
        out << '\n';
    }
}

void write_results_csv(std::ostream& out, const std::vector<ExperimentResult>& results) {
    out << "model,param,estimator,true_lambda,mean_estimate,abias,rmse,skipped\n";
    for (const auto& r : results) {
        out << r.model << ',' << format_double(r.param) << ',' << estimator_name(r.estimator)
            << ',' << format_double(r.true_lambda) << ',' << format_double(r.mean_estimate)
            << ',' << format_double(r.abias) << ',' << format_double(r.rmse) << ',' << r.skipped
            << '\n';
    }
}

void write_results_csv_file(const std::string& path, const std::vector<ExperimentResult>& results) {
    auto out = open_output(path);
    write_results_csv(out, results);
}

void write_comparison_csv(std::ostream& out, const std::vector<ComparisonRow>& rows) {
    out << "model,param,estimator,true_lambda,mean_estimate,abias,rmse,skipped,"
           "paper_abias,paper_rmse,abs_diff_abias,abs_diff_rmse\n";
    for (const auto& row : rows) {
        const auto& r = row.ours;
        out << r.model << ',' << format_double(r.param) << ',' << estimator_name(r.estimator)
            << ',' << format_double(r.true_lambda) << ',' << format_double(r.mean_estimate)
            << ',' << format_double(r.abias) << ',' << format_double(r.rmse) << ',' << r.skipped
            << ',' << format_double(row.paper_abias) << ',' << format_double(row.paper_rmse)
            << ',' << format_double(row.diff_abias) << ',' << format_double(row.diff_rmse)
            << '\n';
    }
}

void write_comparison_csv_file(const std::string& path, const std::vector<ComparisonRow>& rows) {
    auto out = open_output(path);
    write_comparison_csv(out, rows);
}

}  // namespace tds
