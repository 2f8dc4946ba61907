#include "srsa/data/cqed.hpp"

#include <fstream>
#include <set>

#include "srsa/protocol/parsers.hpp"  // trim, to_lower

namespace srsa {

Domain normalize_domain_tag(const std::string& raw_tag) {
    try {
        return domain_from_string(to_lower(trim(raw_tag)));
    } catch (const std::invalid_argument&) {
        return Domain::other;
    }
}

std::vector<std::string> validate_record(const QueryRecord& record,
                                         const std::string& raw_domain_tag) {
    std::vector<std::string> violations;
    if (trim(record.id).empty()) violations.push_back("empty id");
    if (trim(record.text).empty()) violations.push_back("empty text");
    if (!raw_domain_tag.empty()) {
        try {
            domain_from_string(to_lower(trim(raw_domain_tag)));
        } catch (const std::invalid_argument&) {
            violations.push_back("warning: unknown domain tag '" + raw_domain_tag +
                                 "' mapped to other");
        }
    }
    return violations;
}

std::vector<QueryRecord> load_cqed(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DatasetError(DatasetError::Kind::missing_file,
                           "cannot open dataset: " + path.string());

    std::vector<QueryRecord> records;
    std::set<std::string> seen_ids;
    std::string line;
    std::size_t line_no = 0;

    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;

        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw DatasetError(DatasetError::Kind::malformed_line,
                               "line " + std::to_string(line_no) + ": invalid JSON: " + e.what(),
                               line_no);
        }
        if (!j.is_object() || !j.contains("id") || !j.contains("domain") || !j.contains("query"))
            throw DatasetError(DatasetError::Kind::malformed_line,
                               "line " + std::to_string(line_no) +
                                   ": record needs fields id, domain, query",
                               line_no);

        QueryRecord record;
        try {
            record.id = j.at("id").get<std::string>();
            record.domain = normalize_domain_tag(j.at("domain").get<std::string>());
            record.text = j.at("query").get<std::string>();
            if (j.contains("asked_at")) record.asked_at = j.at("asked_at").get<std::string>();
        } catch (const json::exception& e) {
            throw DatasetError(DatasetError::Kind::malformed_line,
                               "line " + std::to_string(line_no) + ": bad field type: " + e.what(),
                               line_no);
        }

        if (trim(record.text).empty())
            throw DatasetError(DatasetError::Kind::malformed_line,
                               "line " + std::to_string(line_no) + ": empty query text", line_no);
        if (!seen_ids.insert(record.id).second)
            throw DatasetError(DatasetError::Kind::duplicate_id,
                               "line " + std::to_string(line_no) + ": duplicate id '" +
                                   record.id + "'",
                               line_no);
        records.push_back(std::move(record));
    }

    if (records.empty())
        throw DatasetError(DatasetError::Kind::empty_file,
                           "dataset has no records: " + path.string());
    return records;
}

}  // namespace srsa
