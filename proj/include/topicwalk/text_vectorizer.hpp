#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace topicwalk {

struct Document {
    std::string id;
    std::vector<std::string> tokens;
    std::string label;  // empty when the document carries no ground-truth tag
};

struct Corpus {
    std::vector<Document> docs;

    std::size_t size() const { return docs.size(); }
    bool empty() const { return docs.empty(); }
};

// Lowercases, splits on non-alphanumeric bytes, drops tokens shorter than 2.
std::vector<std::string> tokenize(std::string_view text);

// Reads a JSON Lines file ({"id": ..., "text": ..., "label"?: ...} per line).
// Malformed lines and duplicate ids raise std::runtime_error naming the
// offending line or id.
Corpus ingest_jsonl(const std::string& path);

// One document as term-index/weight pairs sorted by term index. `norm` keeps
// the Euclidean length the vector had before normalization; entries hold the
// normalized weights (unit length unless the vector is all-zero).
struct SparseVector {
    std::vector<std::pair<std::uint32_t, double>> entries;
    double norm = 0.0;
};

// tf * ln(N/df) weighting with L2 normalization. Terms present in every
// document get weight zero and are not stored.
std::vector<SparseVector> tfidf(const Corpus& corpus);

// Dot product of two normalized sparse vectors; equals cosine similarity.
double similarity(const SparseVector& u, const SparseVector& v);

}  // namespace topicwalk
