#include "odaudit/topics.hpp"

#include "odaudit/metrics.hpp"
#include "odaudit/rdf.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

using namespace odaudit;
using support::add;
using support::iri;
using support::lit;

TEST_CASE("builtin stopword lists") {
    auto de = topics::builtin_stopwords("de");
    CHECK(de.id == "de");
    CHECK(de.words.count("und"));
    CHECK(de.words.count("der"));
    auto en = topics::builtin_stopwords("en");
    CHECK(en.words.count("the"));
    CHECK_THROWS_AS((void)topics::builtin_stopwords("fr"), std::invalid_argument);
}

TEST_CASE("custom stopword list folds case") {
    auto list = topics::load_stopwords("custom", "Stadt\nLAND\n\nfluss\n");
    CHECK(list.id == "custom");
    CHECK(list.words.count("stadt"));
    CHECK(list.words.count("land"));
    CHECK(list.words.count("fluss"));
}

TEST_CASE("tokenize_text folds filters and drops short tokens") {
    auto de = topics::builtin_stopwords("de");
    auto tokens = topics::tokenize_text("Die Wasserdaten der Stadt: Pegel-Messung 2024, x", de);
    CHECK(tokens == std::vector<std::string>{"wasserdaten", "stadt", "pegel", "messung",
                                             "2024"});
}

TEST_CASE("text field selector") {
    CHECK(topics::text_field_from_string("description") == topics::TextField::description);
    CHECK(topics::text_field_from_string(" KEYWORDS ") == topics::TextField::keywords);
    CHECK(topics::text_field_from_string("title") == topics::TextField::title);
    CHECK(topics::text_field_from_string("anything") == topics::TextField::title);
}

namespace {

metrics::RegistryView corpus_view() {
    model::LandscapeRegistry reg;
    model::PortalDescriptor p;
    p.id = "p";
    reg.portals = {p};
    model::CatalogGraph c;
    c.catalog_iri = "http://p/cat";
    c.source_portal = "p";
    c.crawl_date = {2024, 1, 1};
    auto &g = c.triples;
    auto cat = iri("http://p/cat");
    auto ds1 = iri("http://p/ds1");
    add(g, cat, std::string(rdf::vocab::dcat_dataset), ds1);
    add(g, ds1, std::string(rdf::vocab::dct_title), lit("Pegelstände der Elbe"));
    add(g, ds1, std::string(rdf::vocab::dct_description), lit("Tägliche Messwerte"));
    add(g, ds1, std::string(rdf::vocab::dcat_keyword), lit("Wasser"));
    add(g, ds1, std::string(rdf::vocab::dcat_keyword), lit("Pegel"));
    auto ds2 = iri("http://p/ds2");
    add(g, cat, std::string(rdf::vocab::dcat_dataset), ds2);
    add(g, ds2, std::string(rdf::vocab::dct_title), lit("und der die")); // stopwords only
    auto ds3 = iri("http://p/ds3");
    add(g, cat, std::string(rdf::vocab::dcat_dataset), ds3); // no title at all
    g = rdf::normalize(g);
    reg.merged_catalogs = {c};
    return metrics::build_view(reg, model::FormatTable::defaults());
}

topics::Corpus separable_corpus(std::size_t docs_per_theme, std::size_t tokens_per_doc) {
    // Two disjoint vocabularies; long documents so the document-topic
    // posterior is dominated by the counts rather than the prior.
    std::vector<std::vector<std::string>> themes = {
        {"wasser", "fluss", "pegel", "messung", "hochwasser"},
        {"haushalt", "budget", "finanzen", "steuer", "ausgaben"},
    };
    topics::Corpus corpus;
    corpus.stopword_list_id = "de";
    for (std::size_t theme = 0; theme < themes.size(); ++theme) {
        for (std::size_t d = 0; d < docs_per_theme; ++d) {
            topics::Document doc;
            doc.id = "doc-" + std::to_string(theme) + "-" + std::to_string(d);
            for (std::size_t i = 0; i < tokens_per_doc; ++i) {
                const auto &word = themes[theme][(i + d) % themes[theme].size()];
                auto [it, inserted] = corpus.vocabulary_index.emplace(
                    word, static_cast<std::uint32_t>(corpus.vocabulary.size()));
                if (inserted)
                    corpus.vocabulary.push_back(word);
                doc.tokens.push_back(it->second);
            }
            corpus.documents.push_back(std::move(doc));
        }
    }
    return corpus;
}

} // namespace

TEST_CASE("build_corpus drops empty documents and indexes the vocabulary") {
    auto view = corpus_view();
    auto de = topics::builtin_stopwords("de");

    auto titles = topics::build_corpus(view, topics::TextField::title, de);
    REQUIRE(titles.documents.size() == 1);
    CHECK(titles.dropped_documents == 2);
    CHECK(titles.documents[0].id == "http://p/ds1");
    REQUIRE(titles.vocabulary.size() == 2); // pegelstände, elbe
    CHECK(titles.vocabulary_index.size() == titles.vocabulary.size());
    for (auto idx : titles.documents[0].tokens)
        CHECK(idx < titles.vocabulary.size());

    auto keywords = topics::build_corpus(view, topics::TextField::keywords, de);
    REQUIRE(keywords.documents.size() == 1);
    CHECK(keywords.vocabulary == std::vector<std::string>{"pegel", "wasser"});

    auto descriptions = topics::build_corpus(view, topics::TextField::description, de);
    CHECK(descriptions.documents.size() == 1);
    CHECK(descriptions.dropped_documents == 2);
}

TEST_CASE("fit_lda validates its inputs") {
    topics::Corpus empty;
    CHECK_THROWS_AS((void)topics::fit_lda(empty, 2, 10, 1), std::invalid_argument);
    auto corpus = separable_corpus(1, 20);
    CHECK_THROWS_AS((void)topics::fit_lda(corpus, 1, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS((void)topics::fit_lda(corpus, 99, 10, 1), std::invalid_argument);
}

TEST_CASE("fit_lda rows are stochastic and hyperparameters default") {
    auto corpus = separable_corpus(2, 60);
    auto model = topics::fit_lda(corpus, 2, 50, 7);
    CHECK(model.k == 2);
    CHECK(model.iterations == 50);
    CHECK(model.seed == 7);
    CHECK(model.alpha == doctest::Approx(25.0).epsilon(1e-12)); // 50/k
    CHECK(model.beta == doctest::Approx(0.01).epsilon(1e-12));
    REQUIRE(model.phi.size() == 2);
    REQUIRE(model.doc_topic.size() == corpus.documents.size());
    for (const auto &row : model.phi) {
        REQUIRE(row.size() == corpus.vocabulary.size());
        double sum = 0;
        for (double v : row) {
            CHECK(v >= 0);
            sum += v;
        }
        CHECK(std::abs(sum - 1.0) < 1e-9);
    }
    for (const auto &row : model.doc_topic) {
        double sum = 0;
        for (double v : row)
            sum += v;
        CHECK(std::abs(sum - 1.0) < 1e-9);
    }
    CHECK(std::isfinite(model.perplexity));
    CHECK(model.perplexity > 0);

    auto custom = topics::fit_lda(corpus, 2, 5, 7, 0.5, 0.2);
    CHECK(custom.alpha == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(custom.beta == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("fit_lda is bitwise deterministic for a fixed seed") {
    auto corpus = separable_corpus(2, 40);
    auto a = topics::fit_lda(corpus, 2, 30, 42);
    auto b = topics::fit_lda(corpus, 2, 30, 42);
    CHECK(a.phi == b.phi);
    CHECK(a.doc_topic == b.doc_topic);
    CHECK(a.perplexity == b.perplexity);

    auto c = topics::fit_lda(corpus, 2, 30, 43);
    CHECK(a.phi != c.phi);
}

TEST_CASE("fit_lda is invariant to document order") {
    auto corpus = separable_corpus(2, 40);
    auto shuffled = corpus;
    std::reverse(shuffled.documents.begin(), shuffled.documents.end());

    auto a = topics::fit_lda(corpus, 2, 30, 42);
    auto b = topics::fit_lda(shuffled, 2, 30, 42);
    CHECK(a.phi == b.phi);
    CHECK(a.perplexity == b.perplexity);
    for (std::size_t i = 0; i < corpus.documents.size(); ++i) {
        std::size_t j = shuffled.documents.size() - 1 - i;
        CHECK(a.doc_topic[i] == b.doc_topic[j]);
    }
}

TEST_CASE("fit_lda separates disjoint themes") {
    auto corpus = separable_corpus(3, 600);
    auto model = topics::fit_lda(corpus, 2, 150, 42);
    for (std::size_t d = 0; d < corpus.documents.size(); ++d) {
        double dominant = *std::max_element(model.doc_topic[d].begin(),
                                            model.doc_topic[d].end());
        CHECK(dominant > 0.9);
    }
    // Documents of one theme agree on their dominant topic and the themes use
    // different topics.
    auto argmax = [&](std::size_t d) {
        return std::max_element(model.doc_topic[d].begin(), model.doc_topic[d].end()) -
               model.doc_topic[d].begin();
    };
    CHECK(argmax(0) == argmax(1));
    CHECK(argmax(0) == argmax(2));
    CHECK(argmax(3) == argmax(4));
    CHECK(argmax(0) != argmax(3));
}

TEST_CASE("top_terms ranks by weight and reports corpus counts") {
    auto corpus = separable_corpus(3, 200);
    auto model = topics::fit_lda(corpus, 2, 100, 42);
    auto ranked = topics::top_terms(model, corpus, 3);
    REQUIRE(ranked.size() == 2);
    std::vector<std::set<std::string>> themes = {
        {"wasser", "fluss", "pegel", "messung", "hochwasser"},
        {"haushalt", "budget", "finanzen", "steuer", "ausgaben"},
    };
    for (const auto &topic : ranked) {
        REQUIRE(topic.size() == 3);
        CHECK(topic[0].weight >= topic[1].weight);
        CHECK(topic[1].weight >= topic[2].weight);
        // all top terms of one topic come from the same theme
        int theme0 = 0, theme1 = 0;
        for (const auto &t : topic) {
            CHECK(t.corpus_count == 120); // 3 docs * 200 tokens / 5 words
            theme0 += themes[0].count(t.term);
            theme1 += themes[1].count(t.term);
        }
        CHECK((theme0 == 3 || theme1 == 3));
    }

    auto capped = topics::top_terms(model, corpus, 99);
    CHECK(capped[0].size() == corpus.vocabulary.size()); // capped at the vocabulary
}
