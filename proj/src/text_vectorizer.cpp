#include "topicwalk/text_vectorizer.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace topicwalk {

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    for (char ch : text) {
        unsigned char c = static_cast<unsigned char>(ch);
        if (std::isalnum(c)) {
            current.push_back(static_cast<char>(std::tolower(c)));
        } else if (!current.empty()) {
            if (current.size() >= 2) tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (current.size() >= 2) tokens.push_back(std::move(current));
    return tokens;
}

Corpus ingest_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open corpus file: " + path);

    Corpus corpus;
    std::unordered_set<std::string> seen_ids;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        nlohmann::json obj;
        try {
            obj = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": malformed JSON line: " + e.what());
        }
        if (!obj.is_object() || !obj.contains("id") || !obj.contains("text"))
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": expected object with \"id\" and \"text\"");
        Document doc;
        doc.id = obj.at("id").get<std::string>();
        doc.tokens = tokenize(obj.at("text").get<std::string>());
        if (obj.contains("label")) doc.label = obj.at("label").get<std::string>();
        if (!seen_ids.insert(doc.id).second)
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": duplicate document id \"" + doc.id + "\"");
        corpus.docs.push_back(std::move(doc));
    }
    return corpus;
}

std::vector<SparseVector> tfidf(const Corpus& corpus) {
    if (corpus.empty()) throw std::invalid_argument("tfidf: corpus is empty");

    const std::size_t n = corpus.size();

    // Dictionary in first-appearance order, then document frequencies.
    std::unordered_map<std::string, std::uint32_t> term_index;
    std::vector<std::uint32_t> df;
    for (const Document& doc : corpus.docs) {
        std::unordered_set<std::uint32_t> seen;
        for (const std::string& tok : doc.tokens) {
            auto [it, inserted] = term_index.try_emplace(
                tok, static_cast<std::uint32_t>(term_index.size()));
            if (inserted) df.push_back(0);
            if (seen.insert(it->second).second) ++df[it->second];
        }
    }

    std::vector<double> idf(df.size());
    for (std::size_t t = 0; t < df.size(); ++t)
        idf[t] = std::log(static_cast<double>(n) / static_cast<double>(df[t]));

    std::vector<SparseVector> vectors(n);

#pragma omp parallel for schedule(static)
    for (std::int64_t d = 0; d < static_cast<std::int64_t>(n); ++d) {
        const Document& doc = corpus.docs[static_cast<std::size_t>(d)];
        std::unordered_map<std::uint32_t, std::uint32_t> counts;
        for (const std::string& tok : doc.tokens) ++counts[term_index.at(tok)];

        SparseVector vec;
        vec.entries.reserve(counts.size());
        for (const auto& [term, count] : counts) {
            double w = static_cast<double>(count) * idf[term];
            if (w > 0.0) vec.entries.emplace_back(term, w);
        }
        std::sort(vec.entries.begin(), vec.entries.end());

        double sq = 0.0;
        for (const auto& [term, w] : vec.entries) sq += w * w;
        vec.norm = std::sqrt(sq);
        if (vec.norm > 0.0)
            for (auto& [term, w] : vec.entries) w /= vec.norm;
        vectors[static_cast<std::size_t>(d)] = std::move(vec);
    }
    return vectors;
}

double similarity(const SparseVector& u, const SparseVector& v) {
    double dot = 0.0;
    std::size_t i = 0, j = 0;
    while (i < u.entries.size() && j < v.entries.size()) {
        if (u.entries[i].first == v.entries[j].first) {
            dot += u.entries[i].second * v.entries[j].second;
            ++i;
            ++j;
        } else if (u.entries[i].first < v.entries[j].first) {
            ++i;
        } else {
            ++j;
        }
    }
    return dot;
}

}  // namespace topicwalk
