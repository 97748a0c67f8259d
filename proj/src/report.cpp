#include "ssmote/report.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>
#include <sstream>

namespace ssmote {

std::string format_double(double value) {
    std::array<char, 64> buf{};
    const auto result = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), result.ptr);
}

namespace {

std::string fixed4(double value) {
    std::array<char, 64> buf{};
    std::snprintf(buf.data(), buf.size(), "%.4f", value);
    return buf.data();
}

std::string pad(const std::string& text, std::size_t width) {
    return text.size() >= width ? text + " " : text + std::string(width - text.size(), ' ');
}

std::string opt_k(const EvalCell& cell) {
    return cell.best_k ? std::to_string(*cell.best_k) : "";
}

std::string opt_p(const EvalCell& cell) { return cell.best_p ? cell.best_p->to_string() : ""; }

void append_table(std::ostringstream& out, const EvalReport& report, Metric metric) {
    std::size_t first = 8;
    for (const auto& d : report.datasets) first = std::max(first, d.size() + 2);
    constexpr std::size_t kColumn = 14;

    out << pad(metric == Metric::kF1 ? "F1" : "MCC", first);
    for (Method m : report.methods) out << pad(std::string(to_string(m)), kColumn);
    out << '\n';
    for (const auto& dataset : report.datasets) {
        out << pad(dataset, first);
        for (Method m : report.methods) {
            const EvalCell* cell = report.find(dataset, m);
            const std::string text =
                cell ? fixed4(metric == Metric::kF1 ? cell->f1_mean : cell->mcc_mean) : "-";
            out << pad(text, kColumn);
        }
        out << '\n';
    }
    const auto ranks = rank_methods(report, metric);
    out << pad("rank", first);
    for (double r : ranks) out << pad(fixed4(r), kColumn);
    out << '\n';
}

}  // namespace

std::string format_report_csv(const EvalReport& report) {
    std::ostringstream out;
    out << "dataset,method,metric,mean,std,best_k,best_p\n";
    for (const auto& cell : report.cells) {
        const std::string prefix = cell.dataset + "," + std::string(to_string(cell.method)) + ",";
        const std::string suffix = "," + opt_k(cell) + "," + opt_p(cell) + "\n";
        out << prefix << "f1," << format_double(cell.f1_mean) << ","
            << format_double(cell.f1_std) << suffix;
        out << prefix << "mcc," << format_double(cell.mcc_mean) << ","
            << format_double(cell.mcc_std) << suffix;
    }
    for (Metric metric : {Metric::kF1, Metric::kMcc}) {
        const auto ranks = rank_methods(report, metric);
        for (std::size_t i = 0; i < report.methods.size(); ++i) {
            out << "rank," << to_string(report.methods[i]) << "," << to_string(metric) << ","
                << format_double(ranks[i]) << ",,,\n";
        }
    }
    return out.str();
}

std::string format_report_text(const EvalReport& report) {
    std::ostringstream out;
    out << "# classifier=" << report.classifier << " k_clf=" << report.k_clf
        << " vote_ties=" << report.vote_tie_rule
        << " symmetrize=" << to_string(report.symmetrization) << " seed=" << report.seed << "\n\n";
    append_table(out, report, Metric::kF1);
    out << '\n';
    append_table(out, report, Metric::kMcc);
    out << "\nselected hyperparameters\n";
    for (const auto& cell : report.cells) {
        if (!cell.best_k && !cell.best_p) continue;
        out << "  " << cell.dataset << " " << to_string(cell.method);
        if (cell.best_k) out << " k=" << *cell.best_k;
        if (cell.best_p) out << " p=" << cell.best_p->to_string();
        out << '\n';
    }
    if (report.failure_count() > 0) {
        out << "\nsampler failures (folds scored without oversampling)\n";
        for (const auto& cell : report.cells) {
            for (const auto& d : cell.diagnostics) {
                out << "  " << cell.dataset << " " << to_string(cell.method) << ": " << d << '\n';
            }
        }
    }
    return out.str();
}

}  // namespace ssmote
