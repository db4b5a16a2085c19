#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "semshift/clustering.hpp"
#include "semshift/detection.hpp"
#include "semshift/ranking.hpp"
#include "semshift/similarity.hpp"
#include "semshift/xlingual.hpp"

namespace semshift {

nlohmann::ordered_json to_json(const ClusterSet& clusters);
nlohmann::ordered_json to_json(const ChangeReport& report);
nlohmann::ordered_json to_json(const SimilarityMatrix& matrix);
nlohmann::ordered_json to_json(const XlingComparison& comparison);

// One line per report: word, changed (0/1), gained and lost sense indices as
// comma-separated lists ("-" when empty).
std::string reports_tsv(const std::vector<ChangeReport>& reports);

// word<TAB>score with six decimals, in the given order.
std::string ranking_tsv(const std::vector<RankEntry>& entries);

// Reads word<TAB>value lines; extra columns are ignored. Blank lines are skipped.
std::map<std::string, std::string> read_tsv_column(const std::string& path, std::size_t column = 1);

}  // namespace semshift
