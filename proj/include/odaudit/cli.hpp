// Subcommand orchestration over a portal registry directory:
// crawl, analyze, check-urls, report, topics.
#pragma once

#include "odaudit/http_client.hpp"
#include "odaudit/model.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

namespace odaudit::cli {

struct RunConfig {
    std::string portal_list_path;
    std::string registry_dir = "registry";
    std::string report_dir = "report";
    std::string open_license_path;   // empty → compiled-in list
    std::string open_format_path;    // empty → compiled-in list
    std::string location_table_path; // empty → location coverage skipped
    std::string format_alias_path;   // empty → compiled-in aliases
    std::string stopwords = "de";    // builtin id or a file path
    std::string topics_field = "title";
    bool offline = false;
    std::uint64_t seed = 42;
    int concurrency = 4;
    int timeout_s = 30;
    std::uint32_t k_topics = 6;
    std::uint32_t iterations = 1000;
    int page_size = 100;
    int max_retries = 3;
    int per_host_limit = 2;
    int redirect_limit = 5;
    int cache_ttl_days = 7;
    std::optional<model::Date> crawl_date; // overrides the wall clock
    std::map<std::string, std::string> namespace_rewrites;
    std::string report_format = "json"; // report subcommand: json|markdown|csv-bundle
    std::string probe_method = "head-then-get"; // or "get"
};

std::set<std::string> default_open_formats();
std::set<std::string> default_open_licenses();

// FNV-1a over the canonical field=value serialization of the config.
std::string config_hash(const RunConfig &config);

// Exit statuses: 0 success, 1 usage error, 2 operation failure.
// `client` may be null; a real HTTP client is created when one is needed.
int cmd_crawl(const RunConfig &config, net::HttpClient *client, std::ostream &out,
              std::ostream &err);
int cmd_analyze(const RunConfig &config, net::HttpClient *client, std::ostream &out,
                std::ostream &err);
int cmd_check_urls(const RunConfig &config, net::HttpClient *client, std::ostream &out,
                   std::ostream &err);
int cmd_report(const RunConfig &config, std::ostream &out, std::ostream &err);
int cmd_topics(const RunConfig &config, std::ostream &out, std::ostream &err);

// argv (without the program name) → exit status. Streams default to
// std::cout/std::cerr; `client` is injectable for tests.
int run_cli(const std::vector<std::string> &args, net::HttpClient *client = nullptr,
            std::ostream *out = nullptr, std::ostream *err = nullptr);

} // namespace odaudit::cli
