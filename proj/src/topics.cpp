#include "odaudit/topics.hpp"

#include "odaudit/text.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace odaudit::topics {

namespace {

constexpr const char *kGermanStopwords[] = {
    "aber",  "alle",   "allem",  "allen",  "aller",  "alles",  "als",    "also",
    "am",    "an",     "ander",  "andere", "anderem", "anderen", "anderer", "anderes",
    "auch",  "auf",    "aus",    "bei",    "bin",    "bis",    "bist",   "da",
    "damit", "dann",   "das",    "dass",   "dein",   "deine",  "dem",    "den",
    "denn",  "der",    "des",    "dessen", "die",    "dies",   "diese",  "diesem",
    "diesen", "dieser", "dieses", "doch",  "dort",   "durch",  "ein",    "eine",
    "einem", "einen",  "einer",  "eines",  "einig",  "einige", "er",     "es",
    "etwas", "euer",   "eure",   "für",    "gegen",  "gewesen", "hab",   "habe",
    "haben", "hat",    "hatte",  "hatten", "hier",   "hin",    "hinter", "ich",
    "ihr",   "ihre",   "im",     "in",     "indem",  "ins",    "ist",    "ja",
    "jede",  "jedem",  "jeden",  "jeder",  "jedes",  "jene",   "jenem",  "jenen",
    "jener", "jenes",  "kann",   "kein",   "keine",  "keinem", "keinen", "keiner",
    "keines", "können", "mehr",  "mein",   "meine",  "mit",    "muss",   "nach",
    "nicht", "noch",   "nun",    "nur",    "ob",     "oder",   "ohne",   "sehr",
    "sein",  "seine",  "seinem", "seinen", "seiner", "seines", "selbst", "sich",
    "sie",   "sind",   "so",     "solche", "soll",   "sollte", "sondern", "sonst",
    "um",    "und",    "uns",    "unser",  "unter",  "viel",   "vom",    "von",
    "vor",   "während", "war",   "waren",  "warst",  "was",    "weil",   "weiter",
    "welche", "welchem", "welchen", "welcher", "welches", "wenn", "werde", "werden",
    "wie",   "wieder", "will",   "wir",    "wird",   "wirst",  "wo",     "wollen",
    "wollte", "wurde", "wurden", "zu",     "zum",    "zur",    "zwar",   "zwischen",
};

constexpr const char *kEnglishStopwords[] = {
    "a",     "about", "above", "after",  "again",  "all",   "also",  "an",
    "and",   "any",   "are",   "as",     "at",     "be",    "been",  "before",
    "being", "below", "between", "both", "but",    "by",    "can",   "could",
    "did",   "do",    "does",  "doing",  "down",   "during", "each", "few",
    "for",   "from",  "further", "had",  "has",    "have",  "having", "he",
    "her",   "here",  "hers",  "him",    "his",    "how",   "i",     "if",
    "in",    "into",  "is",    "it",     "its",    "just",  "more",  "most",
    "my",    "no",    "nor",   "not",    "now",    "of",    "off",   "on",
    "once",  "only",  "or",    "other",  "our",    "ours",  "out",   "over",
    "own",   "same",  "she",   "should", "so",     "some",  "such",  "than",
    "that",  "the",   "their", "theirs", "them",   "then",  "there", "these",
    "they",  "this",  "those", "through", "to",    "too",   "under", "until",
    "up",    "very",  "was",   "we",     "were",   "what",  "when",  "where",
    "which", "while", "who",   "whom",   "why",    "will",  "with",  "you",
    "your",  "yours",
};

// splitmix64: tiny deterministic generator, one per document so resampling
// order does not depend on how documents were supplied.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

} // namespace

StopwordList builtin_stopwords(const std::string &language) {
    StopwordList list;
    list.id = language;
    if (language == "de") {
        for (const char *w : kGermanStopwords)
            list.words.insert(w);
    } else if (language == "en") {
        for (const char *w : kEnglishStopwords)
            list.words.insert(w);
    } else {
        throw std::invalid_argument("no builtin stopword list '" + language + "'");
    }
    return list;
}

StopwordList load_stopwords(const std::string &id, std::string_view content) {
    StopwordList list;
    list.id = id;
    std::size_t start = 0;
    while (start <= content.size()) {
        std::size_t end = content.find('\n', start);
        std::string_view line = content.substr(
            start, end == std::string_view::npos ? content.size() - start : end - start);
        auto hash = line.find('#');
        if (hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = text::trim(line);
        if (!line.empty())
            list.words.insert(text::fold_case(line));
        if (end == std::string_view::npos)
            break;
        start = end + 1;
    }
    return list;
}

TextField text_field_from_string(std::string_view s) {
    std::string v = text::lower_ascii(text::trim(s));
    if (v == "description")
        return TextField::description;
    if (v == "keywords")
        return TextField::keywords;
    return TextField::title;
}

std::vector<std::string> tokenize_text(std::string_view content,
                                       const StopwordList &stopwords) {
    std::vector<std::string> out;
    for (const auto &raw : text::tokenize(content)) {
        std::string token = text::fold_case(raw);
        if (text::cp_length(token) < 2)
            continue;
        if (stopwords.words.count(token))
            continue;
        out.push_back(std::move(token));
    }
    return out;
}

Corpus build_corpus(const metrics::RegistryView &view, TextField field,
                    const StopwordList &stopwords) {
    Corpus corpus;
    corpus.stopword_list_id = stopwords.id;
    for (const auto &ds : view.datasets) {
        std::string content;
        switch (field) {
        case TextField::title:
            content = ds.title.value_or("");
            break;
        case TextField::description:
            content = ds.description.value_or("");
            break;
        case TextField::keywords:
            for (const auto &k : ds.keywords) {
                content += k;
                content.push_back(' ');
            }
            break;
        }
        auto tokens = tokenize_text(content, stopwords);
        if (tokens.empty()) {
            ++corpus.dropped_documents;
            continue;
        }
        Document doc;
        doc.id = ds.node.is_blank() ? "_:" + ds.node.value : ds.node.value;
        for (auto &token : tokens) {
            auto [it, inserted] = corpus.vocabulary_index.emplace(
                std::move(token), static_cast<std::uint32_t>(corpus.vocabulary.size()));
            if (inserted)
                corpus.vocabulary.push_back(it->first);
            doc.tokens.push_back(it->second);
        }
        corpus.documents.push_back(std::move(doc));
    }
    return corpus;
}

TopicModel fit_lda(const Corpus &corpus, std::uint32_t k, std::uint32_t iterations,
                   std::uint64_t seed, double alpha, double beta) {
    const std::size_t doc_count = corpus.documents.size();
    const std::size_t vocab = corpus.vocabulary.size();
    if (doc_count == 0)
        throw std::invalid_argument("cannot fit topics on an empty corpus");
    if (k < 2)
        throw std::invalid_argument("topic count must be at least 2");
    if (static_cast<std::size_t>(k) > vocab)
        throw std::invalid_argument("topic count exceeds vocabulary size");
    if (alpha <= 0)
        alpha = 50.0 / static_cast<double>(k);
    if (beta <= 0)
        beta = 0.01;

    // Canonical processing order: documents sorted by id. The shared count
    // matrices and every per-document RNG stream are then independent of the
    // order documents arrived in.
    std::vector<std::size_t> order(doc_count);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return corpus.documents[a].id < corpus.documents[b].id;
    });

    std::vector<SplitMix64> rng;
    rng.reserve(doc_count);
    std::vector<std::vector<std::uint32_t>> assignment(doc_count);

    std::vector<std::uint64_t> topic_total(k, 0);
    std::vector<std::vector<std::uint64_t>> topic_word(k,
                                                       std::vector<std::uint64_t>(vocab, 0));
    std::vector<std::vector<std::uint64_t>> doc_topic_count(doc_count,
                                                            std::vector<std::uint64_t>(k, 0));

    for (std::size_t pos = 0; pos < doc_count; ++pos) {
        std::size_t d = order[pos];
        const auto &doc = corpus.documents[d];
        rng.emplace_back(text::fnv1a64(doc.id) ^ (seed * 0x9E3779B97F4A7C15ULL + 1));
        auto &gen = rng.back();
        assignment[d].resize(doc.tokens.size());
        for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
            std::uint32_t topic = static_cast<std::uint32_t>(gen.next() % k);
            assignment[d][i] = topic;
            ++topic_total[topic];
            ++topic_word[topic][doc.tokens[i]];
            ++doc_topic_count[d][topic];
        }
    }

    const double vbeta = static_cast<double>(vocab) * beta;
    std::vector<double> weights(k);
    for (std::uint32_t iter = 0; iter < iterations; ++iter) {
        for (std::size_t pos = 0; pos < doc_count; ++pos) {
            std::size_t d = order[pos];
            const auto &doc = corpus.documents[d];
            auto &gen = rng[pos];
            for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
                std::uint32_t w = doc.tokens[i];
                std::uint32_t old_topic = assignment[d][i];
                --topic_total[old_topic];
                --topic_word[old_topic][w];
                --doc_topic_count[d][old_topic];

                double cumulative = 0;
                for (std::uint32_t t = 0; t < k; ++t) {
                    double p = (static_cast<double>(doc_topic_count[d][t]) + alpha) *
                               (static_cast<double>(topic_word[t][w]) + beta) /
                               (static_cast<double>(topic_total[t]) + vbeta);
                    cumulative += p;
                    weights[t] = cumulative;
                }
                double target = gen.uniform() * cumulative;
                std::uint32_t new_topic = static_cast<std::uint32_t>(
                    std::lower_bound(weights.begin(), weights.end(), target) -
                    weights.begin());
                if (new_topic >= k)
                    new_topic = k - 1;

                assignment[d][i] = new_topic;
                ++topic_total[new_topic];
                ++topic_word[new_topic][w];
                ++doc_topic_count[d][new_topic];
            }
        }
    }

    TopicModel model;
    model.k = k;
    model.iterations = iterations;
    model.seed = seed;
    model.alpha = alpha;
    model.beta = beta;
    model.phi.assign(k, std::vector<double>(vocab, 0));
    for (std::uint32_t t = 0; t < k; ++t) {
        double denom = static_cast<double>(topic_total[t]) + vbeta;
        for (std::size_t w = 0; w < vocab; ++w)
            model.phi[t][w] = (static_cast<double>(topic_word[t][w]) + beta) / denom;
    }
    model.doc_topic.assign(doc_count, std::vector<double>(k, 0));
    const double kalpha = static_cast<double>(k) * alpha;
    for (std::size_t d = 0; d < doc_count; ++d) {
        double length = static_cast<double>(corpus.documents[d].tokens.size());
        for (std::uint32_t t = 0; t < k; ++t)
            model.doc_topic[d][t] =
                (static_cast<double>(doc_topic_count[d][t]) + alpha) / (length + kalpha);
    }

    // Summed in canonical order so the value is document-order invariant.
    double log_likelihood = 0;
    std::uint64_t token_count = 0;
    for (std::size_t pos = 0; pos < doc_count; ++pos) {
        std::size_t d = order[pos];
        for (std::uint32_t w : corpus.documents[d].tokens) {
            double p = 0;
            for (std::uint32_t t = 0; t < k; ++t)
                p += model.doc_topic[d][t] * model.phi[t][w];
            log_likelihood += std::log(p);
            ++token_count;
        }
    }
    model.perplexity =
        token_count == 0 ? 0.0
                         : std::exp(-log_likelihood / static_cast<double>(token_count));
    return model;
}

std::vector<std::vector<RankedTerm>> top_terms(const TopicModel &model, const Corpus &corpus,
                                               std::size_t per_topic) {
    std::vector<std::uint64_t> counts(corpus.vocabulary.size(), 0);
    for (const auto &doc : corpus.documents)
        for (std::uint32_t w : doc.tokens)
            ++counts[w];

    std::vector<std::vector<RankedTerm>> out(model.k);
    for (std::uint32_t t = 0; t < model.k; ++t) {
        std::vector<std::uint32_t> idx(corpus.vocabulary.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) {
            if (model.phi[t][a] != model.phi[t][b])
                return model.phi[t][a] > model.phi[t][b];
            return corpus.vocabulary[a] < corpus.vocabulary[b];
        });
        std::size_t take = std::min(per_topic, idx.size());
        out[t].reserve(take);
        for (std::size_t i = 0; i < take; ++i)
            out[t].push_back(
                {corpus.vocabulary[idx[i]], model.phi[t][idx[i]], counts[idx[i]]});
    }
    return out;
}

} // namespace odaudit::topics
