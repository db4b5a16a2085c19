#include "semshift/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "semshift/error.hpp"

namespace semshift {
namespace {

using ojson = nlohmann::ordered_json;

std::string index_list(const std::vector<std::size_t>& indices) {
    if (indices.empty()) return "-";
    std::string out;
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(indices[i]);
    }
    return out;
}

ojson pairs_json(const std::vector<SensePair>& pairs) {
    ojson out = ojson::array();
    for (const auto& p : pairs) out.push_back({{"l1", p.l1}, {"l2", p.l2}, {"similarity", p.similarity}});
    return out;
}

}  // namespace

ojson to_json(const ClusterSet& clusters) {
    ojson list = ojson::array();
    for (const auto& c : clusters.clusters) {
        list.push_back({{"centroid", c.centroid}, {"members", c.members}});
    }
    return {{"word", clusters.word},
            {"language", clusters.slice.language},
            {"period", clusters.slice.period},
            {"clusters", list},
            {"pruned", clusters.pruned}};
}

ojson to_json(const ChangeReport& report) {
    return {{"word", report.word},
            {"changed", report.changed},
            {"gained", report.gained},
            {"lost", report.lost}};
}

ojson to_json(const SimilarityMatrix& matrix) {
    ojson rows = ojson::array();
    for (std::size_t r = 0; r < matrix.rows(); ++r) {
        ojson row = ojson::array();
        for (std::size_t c = 0; c < matrix.cols(); ++c) row.push_back(matrix(r, c));
        rows.push_back(row);
    }
    std::vector<std::size_t> row_ids(matrix.rows());
    std::vector<std::size_t> col_ids(matrix.cols());
    for (std::size_t i = 0; i < row_ids.size(); ++i) row_ids[i] = i;
    for (std::size_t i = 0; i < col_ids.size(); ++i) col_ids[i] = i;
    return {{"row_senses", row_ids}, {"col_senses", col_ids}, {"values", rows}};
}

ojson to_json(const XlingComparison& cmp) {
    return {{"word_l1", cmp.word_pair.first},
            {"word_l2", cmp.word_pair.second},
            {"t_cs", cmp.t_cs},
            {"consistent_gains", pairs_json(cmp.consistent_gains)},
            {"divergent_gains_l1", cmp.divergent_gains_l1},
            {"divergent_gains_l2", cmp.divergent_gains_l2},
            {"consistent_losses", pairs_json(cmp.consistent_losses)},
            {"divergent_losses_l1", cmp.divergent_losses_l1},
            {"divergent_losses_l2", cmp.divergent_losses_l2}};
}

std::string reports_tsv(const std::vector<ChangeReport>& reports) {
    std::string out;
    for (const auto& r : reports) {
        out += r.word + '\t' + (r.changed ? "1" : "0") + '\t' + index_list(r.gained) + '\t' +
               index_list(r.lost) + '\n';
    }
    return out;
}

std::string ranking_tsv(const std::vector<RankEntry>& entries) {
    std::string out;
    char buf[64];
    for (const auto& e : entries) {
        std::snprintf(buf, sizeof(buf), "%.6f", e.score);
        out += e.word + '\t' + buf + '\n';
    }
    return out;
}

std::map<std::string, std::string> read_tsv_column(const std::string& path, std::size_t column) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::map<std::string, std::string> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, '\t')) fields.push_back(field);
        if (fields.size() <= column) {
            throw Error(path + ":" + std::to_string(line_no) + ": expected at least " +
                        std::to_string(column + 1) + " tab-separated fields");
        }
        if (!out.emplace(fields[0], fields[column]).second) {
            throw Error(path + ":" + std::to_string(line_no) + ": duplicate word " + fields[0]);
        }
    }
    return out;
}

}  // namespace semshift
