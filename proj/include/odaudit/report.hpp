// Versioned quality report: assembly from metric outputs, JSON round-trip,
// markdown summary, and plot-ready CSV bundles.
#pragma once

#include "odaudit/accessibility.hpp"
#include "odaudit/metrics.hpp"
#include "odaudit/topics.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace odaudit::report {

inline constexpr std::string_view kSchemaVersion = "1";
inline constexpr std::string_view kToolName = "odaudit";

struct Inputs {
    std::string landscape_id;
    std::string registry_dir;
    std::vector<std::string> catalog_files;
    std::map<std::string, std::string> crawl_dates; // portal id → ISO date
    std::size_t portal_count = 0;
    std::size_t catalog_count = 0;
    std::uint64_t triple_count = 0;
    std::string config_hash;
};

struct TopicsBlock {
    std::uint32_t k = 0;
    std::uint32_t iterations = 0;
    std::uint64_t seed = 0;
    double alpha = 0, beta = 0;
    double perplexity = 0;
    std::size_t documents = 0;
    std::size_t vocabulary = 0;
    std::size_t dropped_documents = 0;
    std::string field;
    std::string stopword_list;
    std::vector<std::vector<topics::RankedTerm>> terms;
};

struct AccessibilityBlock {
    metrics::Ratio distribution_ratio;
    metrics::Ratio url_level_ratio;
    std::map<std::string, std::uint64_t> histogram;
    std::size_t probed_urls = 0;
    std::size_t cache_hits = 0;
};

struct Content {
    std::optional<metrics::KeyData> key_data;
    std::optional<metrics::UniquenessResult> uniqueness;
    std::optional<metrics::Interoperability> interoperability;
    std::optional<metrics::LicenseRatios> licenses;
    std::optional<metrics::ReplicaResult> replica;
    std::optional<metrics::KeywordICResult> keyword_ic;
    std::optional<AccessibilityBlock> accessibility;
    std::string accessibility_skip_reason; // used when accessibility is absent
    std::optional<metrics::Completeness> completeness;
    std::optional<metrics::FreshnessSummary> freshness_all;
    std::map<std::string, metrics::FreshnessSummary> freshness_per_portal;
    std::optional<metrics::LocationCoverage> location;
    std::string location_skip_reason;
    std::optional<std::map<std::string, std::uint64_t>> format_histogram;
    std::optional<metrics::NamespaceDistribution> namespaces;
    std::optional<TopicsBlock> topics;
    std::string topics_skip_reason;
    std::map<std::string, std::uint64_t> tallies;
    std::vector<std::string> notes;
};

struct QualityReport {
    nlohmann::ordered_json body;
};

// Exact rational to 3 decimals using integer arithmetic only.
std::string format_ratio_value(std::uint64_t numerator, std::uint64_t denominator);

// Throws std::invalid_argument when key_data is missing.
QualityReport assemble(const Inputs &inputs, const Content &content);

std::string render_json(const QualityReport &report);
QualityReport parse_json(std::string_view content);
std::string render_markdown(const QualityReport &report);

// Relative file name → content. "json" → report.json; "markdown" → report.md;
// "csv-bundle" → plots/*.csv. Throws std::invalid_argument on unknown format.
std::map<std::string, std::string> render_files(const QualityReport &report,
                                                const std::string &format);

} // namespace odaudit::report
