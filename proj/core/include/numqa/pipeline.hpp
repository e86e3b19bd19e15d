#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "numqa/locate.hpp"
#include "numqa/metrics.hpp"
#include "numqa/pretrain.hpp"
#include "numqa/retrieve.hpp"
#include "numqa/sequence.hpp"

namespace numqa {

struct QaTurn {
    std::string question;
    std::string answer;
};

struct AnswerSpec {
    enum class Kind { formula, spans, count };
    Kind kind = Kind::formula;
    std::string formula;
    std::vector<std::string> spans;
    long long count = 0;
};

/// One QA record of the native JSONL format.
struct Record {
    std::string id;
    std::string question;
    std::vector<std::string> paragraphs;
    std::vector<Table> tables;
    AnswerSpec answer;
    std::string answer_type;  // arithmetic | span | spans | count
    std::optional<std::string> scale;
    std::optional<std::string> source;  // text | table | hybrid
    std::vector<QaTurn> history;        // prior dialogue turns
};

struct IngestIssue {
    int line = 0;
    std::string field;
    std::string message;
};

struct IngestResult {
    std::vector<Record> records;
    std::vector<IngestIssue> issues;  // malformed lines; valid lines still load
};

/// Read the native JSONL file. Throws FileNotFound; schema violations are
/// collected per line, they do not abort the run.
IngestResult ingest(const std::string& path);
Record record_from_json_line(const std::string& line, int line_number);

struct PipelineConfig {
    int budget = 512;
    int k_max = 5;
    CodecOptions codec;
    SynthConfig synth;
    AmbiguityPolicy ambiguity = AmbiguityPolicy::first_match;
    int workers = 1;
    std::uint64_t seed = 0;
};

struct CompiledRecord {
    std::string id;
    std::string input;            // question (+history) followed by selected evidence
    std::string target_sequence;  // serialized reasoning sequence
    LocationReport location;
    RetrievalResult retrieval;
    std::string primary_table_id;  // table the gold formula was grounded against
    bool arithmetic = false;
    std::string error;  // non-empty when this record failed; others continue
};

struct RetrievalTrainingRow {
    std::string record_id;
    std::string unit_id;
    std::string question;
    std::string unit_text;
    int label = 0;
};

struct PipelineArtifacts {
    std::vector<CompiledRecord> compiled;  // sorted by record id
    std::vector<RetrievalTrainingRow> retrieval_training;
    int total_operands = 0;
    int ambiguous_operands = 0;
    int missing_operands = 0;
    int failures = 0;

    double ambiguity_rate() const {
        return total_operands == 0 ? 0.0 : static_cast<double>(ambiguous_operands) / total_operands;
    }
    double missing_rate() const {
        return total_operands == 0 ? 0.0 : static_cast<double>(missing_operands) / total_operands;
    }
};

/// Retrieve -> locate -> decompose -> encode for every record, in parallel
/// but with byte-deterministic output: per-record work is independent and
/// results are merged in record-id order.
PipelineArtifacts run_pipeline(const std::vector<Record>& records, const PipelineConfig& config);

/// Compile just one record (the worker body of run_pipeline).
CompiledRecord compile_record(const Record& record, const PipelineConfig& config);

// --- evidence helpers ---

std::vector<EvidenceUnit> record_units(const Record& record);
/// History turns prepended to the question text (context-dependent sets).
std::string question_with_history(const Record& record);
/// Question first, then the selected evidence units in rank order.
std::string model_input_text(const Record& record, const std::vector<EvidenceUnit>& units,
                             const RetrievalResult& retrieval);
/// The table the gold formula grounds best against (most located operands,
/// ties to the first); null when the record has no tables.
const Table* primary_table(const Record& record, const Formula* formula,
                           AmbiguityPolicy policy = AmbiguityPolicy::first_match);

/// Gold value/spans/count of a record; arithmetic formulas are evaluated
/// (against the primary table when they aggregate).
GoldAnswer gold_answer(const Record& record);

// --- evaluation ---

std::map<std::string, std::string> read_predictions(const std::string& path);

/// Score a prediction file against the records: decode, execute, compare,
/// and aggregate with answer-type and evidence-source breakdowns. Missing
/// predictions count as incorrect.
EvalReport evaluate_run(const std::vector<Record>& records,
                        const std::map<std::string, std::string>& predictions,
                        const PipelineConfig& config,
                        std::vector<RecordOutcome>* outcomes = nullptr);

// --- prompts ---

PromptExample make_prompt_example(const Record& record, PromptStyle style);

// --- pretraining data ---

std::vector<SynthExample> synth_corpus(const std::vector<Record>& records,
                                       const SynthConfig& config);

// --- file emission (JSONL, UTF-8, \n line endings) ---

void write_training_jsonl(const PipelineArtifacts& artifacts, const std::string& path);
void write_retrieval_training_jsonl(const PipelineArtifacts& artifacts, const std::string& path);
void write_location_report_json(const PipelineArtifacts& artifacts, const std::string& path);
void write_pretrain_jsonl(const std::vector<SynthExample>& examples, const std::string& path);

}  // namespace numqa
