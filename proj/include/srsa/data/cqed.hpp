#pragma once

#include <filesystem>
#include <stdexcept>
#include <vector>

#include "srsa/core/types.hpp"

namespace srsa {

class DatasetError : public std::runtime_error {
public:
    enum class Kind { malformed_line, duplicate_id, empty_file, missing_file };

    DatasetError(Kind kind, const std::string& what, std::size_t line_no = 0)
        : std::runtime_error(what), kind_(kind), line_no_(line_no) {}

    Kind kind() const { return kind_; }
    std::size_t line_no() const { return line_no_; }

private:
    Kind kind_;
    std::size_t line_no_;
};

/// Loads a CQED-format JSONL file: one record per line with fields id,
/// domain, query (asked_at optional). Order preserved; blank lines skipped;
/// duplicate ids rejected. Unknown domain tags map to "other" (see
/// validate_record).
std::vector<QueryRecord> load_cqed(const std::filesystem::path& path);

/// Checks QueryRecord invariants; returns the list of violations (empty = ok,
/// never mutates). When the raw domain tag is supplied and unknown, a warning
/// violation is reported and the record is expected to carry domain = other.
std::vector<std::string> validate_record(const QueryRecord& record,
                                         const std::string& raw_domain_tag = "");

/// Lowercases and maps a raw tag to a Domain; unknown tags become other.
Domain normalize_domain_tag(const std::string& raw_tag);

}  // namespace srsa
