#include "hbnum/dataset.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "text_util.hpp"

namespace hbnum {

namespace {

using detail::parse_double;
using detail::parse_integer;
using detail::split_fields;
using detail::trim;

const std::vector<std::string>& expected_header(TaskKind kind) {
    static const std::vector<std::string> snarc{"subject", "stimulus", "hand", "rt_ms", "error"};
    static const std::vector<std::string> nde{"subject", "larger", "smaller", "rt_ms", "error"};
    return kind == TaskKind::Snarc ? snarc : nde;
}

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& p : parts) {
        if (!out.empty()) out += ',';
        out += p;
    }
    return out;
}

void check_header(std::string_view line, const std::vector<std::string>& expected) {
    const auto fields = split_fields(line);
    bool ok = fields.size() == expected.size();
    for (std::size_t i = 0; ok && i < fields.size(); ++i) ok = fields[i] == expected[i];
    if (!ok) {
        throw ParseError(1, "expected header '" + join(expected) + "', got '" +
                                std::string(trim(line)) + "'");
    }
}

double parse_rt(std::string_view field, std::size_t line_no) {
    const auto rt = parse_double(field);
    if (!rt) throw ParseError(line_no, "non-numeric rt_ms '" + std::string(field) + "'");
    if (!(*rt > 0.0)) throw ParseError(line_no, "rt_ms must be positive");
    return *rt;
}

bool parse_error_flag(std::string_view field, std::size_t line_no) {
    if (field == "0") return false;
    if (field == "1") return true;
    throw ParseError(line_no, "error flag must be 0 or 1, got '" + std::string(field) + "'");
}

TrialRecord parse_snarc_row(const std::vector<std::string_view>& f, std::size_t line_no) {
    TrialRecord r;
    r.subject = std::string(f[0]);
    const auto number = parse_integer(f[1]);
    if (!number) throw ParseError(line_no, "non-integer stimulus '" + std::string(f[1]) + "'");
    r.stimulus = static_cast<int>(*number);
    if (f[2] == "L") {
        r.hand = Hand::Left;
    } else if (f[2] == "R") {
        r.hand = Hand::Right;
    } else {
        throw ParseError(line_no, "unknown hand code '" + std::string(f[2]) + "'");
    }
    r.rt_ms = parse_rt(f[3], line_no);
    r.is_error = parse_error_flag(f[4], line_no);
    return r;
}

TrialRecord parse_nde_row(const std::vector<std::string_view>& f, std::size_t line_no) {
    TrialRecord r;
    r.subject = std::string(f[0]);
    const auto larger = parse_double(f[1]);
    const auto smaller = parse_double(f[2]);
    if (!larger || !smaller) throw ParseError(line_no, "non-numeric number pair");
    if (!(*larger > *smaller && *smaller >= 1.0)) {
        throw ParseError(line_no, "pair must satisfy larger > smaller >= 1");
    }
    r.stimulus = NumberPair{*larger, *smaller};
    r.rt_ms = parse_rt(f[3], line_no);
    r.is_error = parse_error_flag(f[4], line_no);
    return r;
}

/// Keeps subjects in first-appearance order.
class SubjectIndex {
public:
    std::size_t index_of(const std::string& subject) {
        const auto [it, inserted] = index_.try_emplace(subject, names_.size());
        if (inserted) names_.push_back(subject);
        return it->second;
    }
    const std::vector<std::string>& names() const { return names_; }

private:
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<std::string> names_;
};

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

UnbinnedRatioError::UnbinnedRatioError(double ratio)
    : std::runtime_error("ratio " + detail::format_double(ratio) + " falls in no declared bin"),
      ratio_(ratio) {}

std::size_t RegressionData::cell_count() const {
    std::size_t n = 0;
    for (const auto& c : cells) n += c.size();
    return n;
}

void RegressionData::add(const std::string& subject, double x, double y) {
    auto it = std::find(subjects.begin(), subjects.end(), subject);
    std::size_t i = static_cast<std::size_t>(it - subjects.begin());
    if (it == subjects.end()) {
        subjects.push_back(subject);
        cells.emplace_back();
    }
    cells[i].x.push_back(x);
    cells[i].y.push_back(y);
}

TrialTable parse_trials(std::istream& in, TaskKind kind) {
    TrialTable table;
    table.kind = kind;
    std::string line;
    if (!std::getline(in, line)) throw ParseError(1, "missing header");
    check_header(line, expected_header(kind));

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split_fields(line);
        if (fields.size() != 5) {
            throw ParseError(line_no, "expected 5 columns, got " + std::to_string(fields.size()));
        }
        if (fields[0].empty()) throw ParseError(line_no, "empty subject id");
        table.rows.push_back(kind == TaskKind::Snarc ? parse_snarc_row(fields, line_no)
                                                     : parse_nde_row(fields, line_no));
    }
    return table;
}

TrialTable parse_trials(const std::string& text, TaskKind kind) {
    std::istringstream in(text);
    return parse_trials(in, kind);
}

FilterResult filter_trials(const TrialTable& trials, double rt_cutoff_ms) {
    if (!(rt_cutoff_ms > 0.0)) throw std::invalid_argument("filter_trials: rt cutoff must be positive");
    FilterResult result;
    result.trials.kind = trials.kind;
    auto& stats = result.stats;
    stats.total = trials.rows.size();
    for (const auto& row : trials.rows) {
        if (row.is_error) {
            ++stats.removed_errors;
        } else if (row.rt_ms > rt_cutoff_ms) {
            ++stats.removed_slow;
        } else {
            result.trials.rows.push_back(row);
        }
    }
    stats.retained = result.trials.rows.size();
    stats.exclusion_fraction =
        stats.total == 0 ? 0.0
                         : static_cast<double>(stats.removed_errors + stats.removed_slow) /
                               static_cast<double>(stats.total);
    return result;
}

double median(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("median of an empty list");
    std::vector<double> v(values.begin(), values.end());
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    const double upper = v[mid];
    if (v.size() % 2 == 1) return upper;
    const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lower + upper);
}

SnarcDataset aggregate_snarc(const TrialTable& trials) {
    if (trials.kind != TaskKind::Snarc) throw std::invalid_argument("aggregate_snarc: not a SNARC table");

    struct HandRts {
        std::vector<double> left;
        std::vector<double> right;
    };
    SubjectIndex subjects;
    std::vector<std::map<int, HandRts>> per_subject;
    for (const auto& row : trials.rows) {
        const std::size_t s = subjects.index_of(row.subject);
        if (s == per_subject.size()) per_subject.emplace_back();
        auto& cell = per_subject[s][row.number()];
        (row.hand == Hand::Left ? cell.left : cell.right).push_back(row.rt_ms);
    }

    SnarcDataset out;
    out.subjects = subjects.names();
    for (std::size_t s = 0; s < per_subject.size(); ++s) {
        for (const auto& [number, rts] : per_subject[s]) {
            const auto& subject = out.subjects[s];
            if (rts.left.empty() || rts.right.empty()) {
                throw AggregationError("missing cell (" + subject + ", " + std::to_string(number) +
                                       ", " + (rts.left.empty() ? "Left" : "Right") + ")");
            }
            out.cells.push_back({subject, number, median(rts.right) - median(rts.left)});
        }
    }
    return out;
}

std::vector<RatioBin> default_ratio_bins() {
    return {{1.15, 1.28}, {1.28, 1.43}, {1.48, 1.65}, {2.46, 2.71}};
}

int bin_ratio(double larger, double smaller, std::span<const RatioBin> bins) {
    if (!(smaller > 0.0 && larger > smaller)) {
        throw std::invalid_argument("bin_ratio: requires larger > smaller > 0");
    }
    for (std::size_t k = 0; k < bins.size(); ++k) {
        if (!(bins[k].lo < bins[k].hi) || (k > 0 && bins[k].lo < bins[k - 1].hi)) {
            throw std::invalid_argument("bin_ratio: bins must be non-empty, ascending and non-overlapping");
        }
    }
    const double ratio = larger / smaller;
    for (std::size_t k = 0; k < bins.size(); ++k) {
        if (ratio >= bins[k].lo && ratio < bins[k].hi) return static_cast<int>(k) + 1;
    }
    throw UnbinnedRatioError(ratio);
}

NdeDataset aggregate_nde(const TrialTable& trials, std::span<const RatioBin> bins) {
    if (trials.kind != TaskKind::Nde) throw std::invalid_argument("aggregate_nde: not an NDE table");

    SubjectIndex subjects;
    std::vector<std::map<int, std::vector<double>>> per_subject;
    for (const auto& row : trials.rows) {
        const int bin = bin_ratio(row.pair().larger, row.pair().smaller, bins);
        const std::size_t s = subjects.index_of(row.subject);
        if (s == per_subject.size()) per_subject.emplace_back();
        per_subject[s][bin].push_back(row.rt_ms);
    }

    NdeDataset out;
    out.subjects = subjects.names();
    out.bins.assign(bins.begin(), bins.end());
    for (std::size_t s = 0; s < per_subject.size(); ++s) {
        for (const auto& [bin, rts] : per_subject[s]) {
            out.cells.push_back({out.subjects[s], bin, median(rts)});
        }
    }
    return out;
}

RegressionData to_regression_data(const SnarcDataset& dataset) {
    RegressionData data;
    data.subjects = dataset.subjects;
    data.cells.resize(dataset.subjects.size());
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < dataset.subjects.size(); ++i) index.emplace(dataset.subjects[i], i);
    for (const auto& cell : dataset.cells) {
        auto& sc = data.cells.at(index.at(cell.subject));
        sc.x.push_back(cell.number);
        sc.y.push_back(cell.drt_ms);
    }
    return data;
}

RegressionData to_regression_data(const NdeDataset& dataset) {
    RegressionData data;
    data.subjects = dataset.subjects;
    data.cells.resize(dataset.subjects.size());
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < dataset.subjects.size(); ++i) index.emplace(dataset.subjects[i], i);
    for (const auto& cell : dataset.cells) {
        if (cell.bin < 1 || static_cast<std::size_t>(cell.bin) > dataset.bins.size()) {
            throw std::invalid_argument("NDE cell refers to undeclared bin " + std::to_string(cell.bin));
        }
        auto& sc = data.cells.at(index.at(cell.subject));
        sc.x.push_back(cell.bin);
        sc.y.push_back(cell.rt_ms);
    }
    return data;
}

RegressionData parse_cells(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError(1, "missing header");
    check_header(line, {"subject", "x", "y"});

    RegressionData data;
    SubjectIndex subjects;
    std::vector<std::map<double, double>> seen;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto f = split_fields(line);
        if (f.size() != 3) throw ParseError(line_no, "expected 3 columns, got " + std::to_string(f.size()));
        if (f[0].empty()) throw ParseError(line_no, "empty subject id");
        const auto x = parse_double(f[1]);
        const auto y = parse_double(f[2]);
        if (!x || !y) throw ParseError(line_no, "non-numeric x or y");
        const std::size_t s = subjects.index_of(std::string(f[0]));
        if (s == data.cells.size()) {
            data.cells.emplace_back();
            seen.emplace_back();
        }
        if (!seen[s].emplace(*x, *y).second) {
            throw ParseError(line_no, "duplicate cell for subject '" + std::string(f[0]) + "'");
        }
        data.cells[s].x.push_back(*x);
        data.cells[s].y.push_back(*y);
    }
    data.subjects = subjects.names();
    return data;
}

RegressionData parse_cells(const std::string& text) {
    std::istringstream in(text);
    return parse_cells(in);
}

void write_cells(std::ostream& out, const RegressionData& data) {
    out << "subject,x,y\n";
    for (std::size_t s = 0; s < data.subjects.size(); ++s) {
        const auto& c = data.cells[s];
        for (std::size_t k = 0; k < c.size(); ++k) {
            out << data.subjects[s] << ',' << detail::format_double(c.x[k]) << ','
                << detail::format_double(c.y[k]) << '\n';
        }
    }
}

std::string to_string(TaskKind kind) { return kind == TaskKind::Snarc ? "snarc" : "nde"; }

TaskKind task_kind_from_string(const std::string& name) {
    if (name == "snarc") return TaskKind::Snarc;
    if (name == "nde") return TaskKind::Nde;
    throw std::invalid_argument("unknown model '" + name + "' (expected snarc or nde)");
}

}  // namespace hbnum
