// Bounded-concurrency HTTP probing of access URLs, outcome classification,
// and the line-delimited probe cache.
#pragma once

#include "odaudit/http_client.hpp"
#include "odaudit/metrics.hpp"
#include "odaudit/model.hpp"

#include <chrono>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace odaudit::accessibility {

enum class Outcome { status, timeout, connection_error, invalid_url };

std::string_view to_string(Outcome outcome);

struct ProbeResult {
    std::string url;
    Outcome outcome = Outcome::connection_error;
    int status_code = 0; // set when outcome == status
    std::chrono::milliseconds elapsed{0};
    int redirects_followed = 0;
};

enum class ProbeMethod { head_then_get, get };

struct ProbeConfig {
    int concurrency = 8;
    int per_host_limit = 2;
    std::chrono::milliseconds timeout{30000};
    int redirect_limit = 5;
    ProbeMethod method = ProbeMethod::head_then_get;
};

// Probes each URL once. Redirects are followed manually up to redirect_limit;
// HEAD falls back to GET on 405/501. Non-http(s) URLs are classified
// invalid_url without any network traffic. Results come back sorted by URL.
std::vector<ProbeResult> probe_all(const std::vector<std::string> &urls,
                                   const ProbeConfig &config, net::HttpClient &client);

// Numerator: distributions whose URL resolved to a final 200. Denominator:
// every distribution, including those without an access URL.
metrics::Ratio accessibility_ratio(const std::vector<ProbeResult> &results,
                                   const std::vector<model::DatasetRecord> &datasets);

// URL-level companion: 200-resolving URLs over probed URLs.
metrics::Ratio url_ratio(const std::vector<ProbeResult> &results);

// Classes: "200", "3xx-final", "4xx", "5xx", "other", "no-response".
// Counts over results always sum to the number of results.
std::map<std::string, std::uint64_t> status_histogram(const std::vector<ProbeResult> &results);

struct CacheEntry {
    ProbeResult result;
    model::Date probe_date;
};

class ProbeCache {
public:
    static ProbeCache load(const std::filesystem::path &path);
    void save(const std::filesystem::path &path) const;

    // Fresh means probed within ttl_days of `today`.
    const CacheEntry *fresh(const std::string &url, const model::Date &today,
                            int ttl_days) const;
    void put(const ProbeResult &result, const model::Date &probe_date);
    std::size_t size() const { return entries_.size(); }

private:
    std::map<std::string, CacheEntry> entries_;
};

} // namespace odaudit::accessibility
