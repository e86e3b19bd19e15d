#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "numqa/formula.hpp"

namespace numqa {

/// Two numeric answers match when they agree after rounding half away from
/// zero to `decimals` fractional digits (default four).
bool exact_match(const NumericValue& a, const NumericValue& b, int decimals = 4);

/// Set equality of normalized spans (lowercase, surrounding punctuation
/// stripped, whitespace collapsed).
bool exact_match_spans(const std::vector<std::string>& a, const std::vector<std::string>& b);

/// Structural equality of two programs after canonicalization (operator
/// aliases and grouping commas are normalized by parsing). No commutativity
/// credit: add(2,3) != add(3,2).
bool program_accuracy(const Formula& pred, const Formula& gold);
/// Text overload: an unparseable prediction scores false.
bool program_accuracy_text(const std::string& pred, const Formula& gold);

/// Evaluate the prediction and compare to the gold value under the
/// four-decimal rule; unexecutable predictions score false.
bool execution_accuracy(const Formula& pred, const NumericValue& gold,
                        const Table* table = nullptr);

/// Greedy one-to-one span alignment by descending bag-of-words F1, then the
/// mean token-level F1 over the aligned pairs; spans left unmatched pair with
/// the empty span.
double numeracy_f1(const std::vector<std::string>& pred, const std::vector<std::string>& gold);

/// Per-record scoring result fed into aggregate().
struct RecordOutcome {
    std::string id;
    bool em = false;
    std::optional<bool> execution;  // arithmetic records only
    std::optional<bool> program;    // records with a gold program only
    double f1 = 0.0;
    bool unexecutable = false;
    bool missing_prediction = false;
    std::vector<std::string> diagnostics;
};

/// Answer-type and evidence-source labels for the breakdown tables.
struct RecordLabel {
    std::string answer_type;  // span | spans | arithmetic | count
    std::string source;       // text | table | hybrid (or "unlabeled")
};

struct EvalReport {
    struct Bucket {
        int count = 0;
        int correct = 0;
        std::optional<double> rate() const {
            if (count == 0) return std::nullopt;
            return static_cast<double>(correct) / count;
        }
    };

    int total = 0;
    int unexecutable = 0;
    int missing_predictions = 0;
    std::optional<double> em;
    std::optional<double> arithmetic_em;  // EM over arithmetic-type records only
    std::optional<double> execution_accuracy;
    std::optional<double> program_accuracy;
    std::optional<double> numeracy_f1;
    std::map<std::string, Bucket> by_type;
    std::map<std::string, Bucket> by_source;
};

EvalReport aggregate(const std::vector<RecordOutcome>& outcomes,
                     const std::vector<RecordLabel>& labels);

std::string report_to_json(const EvalReport& report);
std::string report_to_text(const EvalReport& report);

}  // namespace numqa
