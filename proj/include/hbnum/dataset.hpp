#ifndef HBNUM_DATASET_HPP
#define HBNUM_DATASET_HPP

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace hbnum {

enum class TaskKind { Snarc, Nde };
enum class Hand { Left, Right };

/// Larger/smaller pair shown in a magnitude-comparison trial.
struct NumberPair {
    double larger = 0.0;
    double smaller = 0.0;

    double ratio() const { return larger / smaller; }
};

struct TrialRecord {
    std::string subject;
    std::variant<int, NumberPair> stimulus;  // int for SNARC, pair for NDE
    std::optional<Hand> hand;                // SNARC only
    double rt_ms = 0.0;
    bool is_error = false;

    int number() const { return std::get<int>(stimulus); }
    const NumberPair& pair() const { return std::get<NumberPair>(stimulus); }
};

struct TrialTable {
    TaskKind kind = TaskKind::Snarc;
    std::vector<TrialRecord> rows;
};

struct FilterStats {
    std::size_t total = 0;
    std::size_t removed_errors = 0;
    std::size_t removed_slow = 0;
    std::size_t retained = 0;
    double exclusion_fraction = 0.0;
};

struct FilterResult {
    TrialTable trials;
    FilterStats stats;
};

/// Half-open ratio interval [lo, hi).
struct RatioBin {
    double lo = 0.0;
    double hi = 0.0;
};

struct SnarcCell {
    std::string subject;
    int number = 0;
    double drt_ms = 0.0;  // right-hand median minus left-hand median
};

struct SnarcDataset {
    std::vector<std::string> subjects;  // first-appearance order
    std::vector<SnarcCell> cells;       // grouped by subject, ascending number
};

struct NdeCell {
    std::string subject;
    int bin = 0;  // 1-based index into NdeDataset::bins
    double rt_ms = 0.0;
};

struct NdeDataset {
    std::vector<std::string> subjects;
    std::vector<RatioBin> bins;
    std::vector<NdeCell> cells;
};

/// One subject's (predictor, response) observations.
struct SubjectCells {
    std::vector<double> x;
    std::vector<double> y;

    std::size_t size() const { return x.size(); }
};

/// Model-facing view of an aggregated dataset: cells grouped per subject.
struct RegressionData {
    std::vector<std::string> subjects;
    std::vector<SubjectCells> cells;  // parallel to subjects

    std::size_t subject_count() const { return subjects.size(); }
    std::size_t cell_count() const;
    /// Adds a cell, creating the subject on first sight.
    void add(const std::string& subject, double x, double y);
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

class AggregationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnbinnedRatioError : public std::runtime_error {
public:
    explicit UnbinnedRatioError(double ratio);
    double ratio() const { return ratio_; }

private:
    double ratio_;
};

/// Reads a header-bearing comma-separated trial file.
/// SNARC header: subject,stimulus,hand,rt_ms,error. NDE header: subject,larger,smaller,rt_ms,error.
TrialTable parse_trials(std::istream& in, TaskKind kind);
TrialTable parse_trials(const std::string& text, TaskKind kind);

/// Drops error trials, then trials slower than `rt_cutoff_ms` (strictly greater).
FilterResult filter_trials(const TrialTable& trials, double rt_cutoff_ms);

/// Middle order statistic; mean of the two middle values for even counts.
double median(std::span<const double> values);

SnarcDataset aggregate_snarc(const TrialTable& trials);

/// The four ratio bins of the comparison task; note the gaps between them.
std::vector<RatioBin> default_ratio_bins();

/// 1-based index of the bin containing larger/smaller.
int bin_ratio(double larger, double smaller, std::span<const RatioBin> bins);

NdeDataset aggregate_nde(const TrialTable& trials, std::span<const RatioBin> bins);

RegressionData to_regression_data(const SnarcDataset& dataset);
RegressionData to_regression_data(const NdeDataset& dataset);

/// Aggregated-cell file: header subject,x,y.
RegressionData parse_cells(std::istream& in);
RegressionData parse_cells(const std::string& text);
void write_cells(std::ostream& out, const RegressionData& data);

std::string to_string(TaskKind kind);
TaskKind task_kind_from_string(const std::string& name);

}  // namespace hbnum

#endif  // HBNUM_DATASET_HPP
