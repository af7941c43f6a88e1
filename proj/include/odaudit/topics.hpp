// Topic exploration over dataset text fields: tokenization, stopword
// filtering, and Latent Dirichlet Allocation via collapsed Gibbs sampling.
#pragma once

#include "odaudit/metrics.hpp"
#include "odaudit/model.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace odaudit::topics {

struct Document {
    std::string id;
    std::vector<std::uint32_t> tokens; // vocabulary indices
};

struct Corpus {
    std::vector<Document> documents;
    std::vector<std::string> vocabulary;
    std::map<std::string, std::uint32_t> vocabulary_index;
    std::string stopword_list_id;
    std::size_t dropped_documents = 0;
};

struct StopwordList {
    std::string id;
    std::set<std::string> words;
};

StopwordList builtin_stopwords(const std::string &language); // "de" or "en"
StopwordList load_stopwords(const std::string &id, std::string_view content);

enum class TextField { title, description, keywords };
TextField text_field_from_string(std::string_view s);

// Lowercased word tokens, stopwords removed, tokens shorter than two
// codepoints dropped; empty documents are dropped and tallied.
Corpus build_corpus(const metrics::RegistryView &view, TextField field,
                    const StopwordList &stopwords);

std::vector<std::string> tokenize_text(std::string_view content,
                                       const StopwordList &stopwords);

struct TopicModel {
    std::uint32_t k = 0;
    std::vector<std::vector<double>> phi;       // k × V, rows sum to 1
    std::vector<std::vector<double>> doc_topic; // docs × k, rows sum to 1
    std::uint32_t iterations = 0;
    std::uint64_t seed = 0;
    double alpha = 0, beta = 0;
    double perplexity = 0;
};

// Deterministic for fixed (corpus, k, iterations, seed, alpha, beta); the
// per-document RNG streams depend only on document ids, so permuting the
// document order permutes doc_topic rows and changes nothing else.
// alpha <= 0 selects 50/k, beta <= 0 selects 0.01.
TopicModel fit_lda(const Corpus &corpus, std::uint32_t k, std::uint32_t iterations,
                   std::uint64_t seed, double alpha = 0, double beta = 0);

struct RankedTerm {
    std::string term;
    double weight = 0;
    std::uint64_t corpus_count = 0;
};

std::vector<std::vector<RankedTerm>> top_terms(const TopicModel &model, const Corpus &corpus,
                                               std::size_t per_topic);

} // namespace odaudit::topics
