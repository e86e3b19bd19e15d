#include "numqa/metrics.hpp"

#include <algorithm>
#include <iomanip>
#include <set>
#include <sstream>

#include <json.hpp>

#include "numqa/errors.hpp"
#include "numqa/text.hpp"

namespace numqa {

bool exact_match(const NumericValue& a, const NumericValue& b, int decimals) {
    return a.value.rounded_half_away(decimals) == b.value.rounded_half_away(decimals);
}

bool exact_match_spans(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    std::set<std::string> sa, sb;
    for (const auto& s : a) sa.insert(normalize_span(s));
    for (const auto& s : b) sb.insert(normalize_span(s));
    return sa == sb;
}

bool program_accuracy(const Formula& pred, const Formula& gold) {
    return pred == gold;
}

bool program_accuracy_text(const std::string& pred, const Formula& gold) {
    try {
        return program_accuracy(parse_formula(pred).first, gold);
    } catch (const Error&) {
        return false;
    }
}

bool execution_accuracy(const Formula& pred, const NumericValue& gold, const Table* table) {
    try {
        return exact_match(evaluate(pred, table), gold);
    } catch (const Error&) {
        return false;
    }
}

double numeracy_f1(const std::vector<std::string>& pred, const std::vector<std::string>& gold) {
    std::vector<std::vector<std::string>> pred_tokens, gold_tokens;
    for (const auto& s : pred) pred_tokens.push_back(normalized_tokens(s));
    for (const auto& s : gold) gold_tokens.push_back(normalized_tokens(s));

    std::size_t pairs = std::max(pred_tokens.size(), gold_tokens.size());
    if (pairs == 0) return 1.0;

    std::vector<bool> used(pred_tokens.size(), false);
    double total = 0.0;
    // Greedy alignment: each gold span takes the unmatched prediction with the
    // highest bag-of-words F1.
    for (const auto& g : gold_tokens) {
        double best = 0.0;
        int best_index = -1;
        for (std::size_t i = 0; i < pred_tokens.size(); ++i) {
            if (used[i]) continue;
            double f1 = bag_of_words_f1(g, pred_tokens[i]);
            if (best_index < 0 || f1 > best) {
                best = f1;
                best_index = static_cast<int>(i);
            }
        }
        if (best_index >= 0) {
            used[best_index] = true;
            total += best;
        }
        // gold span without a partner contributes 0
    }
    return total / static_cast<double>(pairs);
}

EvalReport aggregate(const std::vector<RecordOutcome>& outcomes,
                     const std::vector<RecordLabel>& labels) {
    EvalReport report;
    report.total = static_cast<int>(outcomes.size());
    if (outcomes.empty()) return report;

    int em_correct = 0;
    int arithmetic_total = 0, arithmetic_correct = 0;
    int exec_total = 0, exec_correct = 0;
    int prog_total = 0, prog_correct = 0;
    double f1_sum = 0.0;

    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        const RecordOutcome& o = outcomes[i];
        const RecordLabel& label = i < labels.size() ? labels[i] : RecordLabel{};
        if (o.em) ++em_correct;
        if (o.unexecutable) ++report.unexecutable;
        if (o.missing_prediction) ++report.missing_predictions;
        f1_sum += o.f1;
        if (o.execution) {
            ++exec_total;
            if (*o.execution) ++exec_correct;
        }
        if (o.program) {
            ++prog_total;
            if (*o.program) ++prog_correct;
        }
        std::string type = label.answer_type.empty() ? "unlabeled" : label.answer_type;
        std::string source = label.source.empty() ? "unlabeled" : label.source;
        auto& tb = report.by_type[type];
        ++tb.count;
        if (o.em) ++tb.correct;
        auto& sb = report.by_source[source];
        ++sb.count;
        if (o.em) ++sb.correct;
        if (type == "arithmetic") {
            ++arithmetic_total;
            if (o.em) ++arithmetic_correct;
        }
    }

    report.em = static_cast<double>(em_correct) / report.total;
    if (arithmetic_total > 0)
        report.arithmetic_em = static_cast<double>(arithmetic_correct) / arithmetic_total;
    if (exec_total > 0) report.execution_accuracy = static_cast<double>(exec_correct) / exec_total;
    if (prog_total > 0) report.program_accuracy = static_cast<double>(prog_correct) / prog_total;
    report.numeracy_f1 = f1_sum / report.total;
    return report;
}

namespace {

nlohmann::ordered_json optional_rate(const std::optional<double>& value) {
    if (!value) return nullptr;
    return *value;
}

nlohmann::ordered_json buckets_to_json(const std::map<std::string, EvalReport::Bucket>& buckets) {
    nlohmann::ordered_json out = nlohmann::ordered_json::object();
    for (const auto& [name, bucket] : buckets) {
        out[name] = {{"count", bucket.count},
                     {"correct", bucket.correct},
                     {"rate", optional_rate(bucket.rate())}};
    }
    return out;
}

std::string format_rate(const std::optional<double>& value) {
    if (!value) return "-";
    std::ostringstream os;
    os << std::fixed << std::setprecision(4) << *value;
    return os.str();
}

}  // namespace

std::string report_to_json(const EvalReport& report) {
    nlohmann::ordered_json j;
    j["total"] = report.total;
    j["em"] = optional_rate(report.em);
    j["arithmetic_em"] = optional_rate(report.arithmetic_em);
    j["execution_accuracy"] = optional_rate(report.execution_accuracy);
    j["program_accuracy"] = optional_rate(report.program_accuracy);
    j["numeracy_f1"] = optional_rate(report.numeracy_f1);
    j["unexecutable"] = report.unexecutable;
    j["missing_predictions"] = report.missing_predictions;
    j["by_type"] = buckets_to_json(report.by_type);
    j["by_source"] = buckets_to_json(report.by_source);
    return j.dump(2);
}

std::string report_to_text(const EvalReport& report) {
    std::ostringstream os;
    os << "records:              " << report.total << "\n";
    os << "em:                   " << format_rate(report.em) << "\n";
    os << "arithmetic em:        " << format_rate(report.arithmetic_em) << "\n";
    os << "execution accuracy:   " << format_rate(report.execution_accuracy) << "\n";
    os << "program accuracy:     " << format_rate(report.program_accuracy) << "\n";
    os << "numeracy f1:          " << format_rate(report.numeracy_f1) << "\n";
    os << "unexecutable:         " << report.unexecutable << "\n";
    os << "missing predictions:  " << report.missing_predictions << "\n";
    auto table = [&os](const char* title, const std::map<std::string, EvalReport::Bucket>& b) {
        os << title << "\n";
        for (const auto& [name, bucket] : b)
            os << "  " << std::left << std::setw(12) << name << " " << bucket.correct << "/"
               << bucket.count << " = " << format_rate(bucket.rate()) << "\n";
    };
    table("by answer type:", report.by_type);
    table("by evidence source:", report.by_source);
    return os.str();
}

}  // namespace numqa
