#include "odaudit/cli.hpp"

#include "odaudit/accessibility.hpp"
#include "odaudit/ingest.hpp"
#include "odaudit/metrics.hpp"
#include "odaudit/registry.hpp"
#include "odaudit/report.hpp"
#include "odaudit/text.hpp"
#include "odaudit/topics.hpp"
#include "odaudit/turtle.hpp"

#include <CLI11.hpp>

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <iostream>
#include <memory>
#include <sstream>

namespace odaudit::cli {

namespace fs = std::filesystem;

namespace {

model::Date date_today() {
    using namespace std::chrono;
    year_month_day ymd{floor<days>(system_clock::now())};
    return model::Date{int(ymd.year()), int(unsigned(ymd.month())), int(unsigned(ymd.day()))};
}

model::Date effective_date(const RunConfig &config) {
    return config.crawl_date ? *config.crawl_date : date_today();
}

// flock-based advisory lock; a second invocation fails instead of queueing.
class RegistryLock {
public:
    explicit RegistryLock(const fs::path &path) {
        fd_ = ::open(path.c_str(), O_CREAT | O_RDWR, 0644);
        if (fd_ < 0)
            throw std::runtime_error("cannot open lock file " + path.string());
        if (::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
            ::close(fd_);
            fd_ = -1;
            throw std::runtime_error("registry is locked by another process: " +
                                     path.string());
        }
    }
    ~RegistryLock() {
        if (fd_ >= 0) {
            ::flock(fd_, LOCK_UN);
            ::close(fd_);
        }
    }
    RegistryLock(const RegistryLock &) = delete;
    RegistryLock &operator=(const RegistryLock &) = delete;

private:
    int fd_ = -1;
};

std::set<std::string> load_token_set(const std::string &path,
                                     std::set<std::string> fallback) {
    if (path.empty())
        return fallback;
    return metrics::parse_token_list(registry::read_file(path));
}

topics::StopwordList resolve_stopwords(const RunConfig &config) {
    if (config.stopwords == "de" || config.stopwords == "en")
        return topics::builtin_stopwords(config.stopwords);
    std::string id = fs::path(config.stopwords).stem().string();
    return topics::load_stopwords(id, registry::read_file(config.stopwords));
}

std::vector<std::string> collect_urls(const std::vector<model::DatasetRecord> &datasets) {
    std::vector<std::string> urls;
    for (const auto &ds : datasets)
        for (const auto &dist : ds.distributions)
            if (dist.access_url)
                urls.push_back(*dist.access_url);
    std::sort(urls.begin(), urls.end());
    urls.erase(std::unique(urls.begin(), urls.end()), urls.end());
    return urls;
}

struct ProbeRun {
    std::vector<accessibility::ProbeResult> results;
    std::size_t probed = 0;
    std::size_t cache_hits = 0;
    std::size_t fresh_with_status = 0;
};

ProbeRun probe_with_cache(const std::vector<std::string> &urls, const RunConfig &config,
                          const registry::Paths &paths, net::HttpClient &client) {
    ProbeRun run;
    auto cache = accessibility::ProbeCache::load(paths.probes_jsonl());
    model::Date today = effective_date(config);

    std::vector<std::string> pending;
    for (const auto &url : urls) {
        if (const auto *entry = cache.fresh(url, today, config.cache_ttl_days)) {
            run.results.push_back(entry->result);
            ++run.cache_hits;
        } else {
            pending.push_back(url);
        }
    }

    accessibility::ProbeConfig pc;
    pc.concurrency = config.concurrency;
    pc.per_host_limit = config.per_host_limit;
    pc.timeout = std::chrono::seconds(config.timeout_s);
    pc.redirect_limit = config.redirect_limit;
    pc.method = config.probe_method == "get" ? accessibility::ProbeMethod::get
                                             : accessibility::ProbeMethod::head_then_get;
    auto fresh = accessibility::probe_all(pending, pc, client);
    run.probed = fresh.size();
    for (const auto &result : fresh) {
        if (result.outcome == accessibility::Outcome::status)
            ++run.fresh_with_status;
        cache.put(result, today);
        run.results.push_back(result);
    }
    if (!fresh.empty())
        cache.save(paths.probes_jsonl());

    std::sort(run.results.begin(), run.results.end(),
              [](const auto &a, const auto &b) { return a.url < b.url; });
    return run;
}

std::unique_ptr<net::HttpClient> owned_client(net::HttpClient *&client) {
    std::unique_ptr<net::HttpClient> owned;
    if (!client) {
        owned = net::make_http_client();
        client = owned.get();
    }
    return owned;
}

void write_report_tree(const fs::path &dir,
                       const std::map<std::string, std::string> &files) {
    for (const auto &[rel, content] : files) {
        fs::path target = dir / rel;
        fs::create_directories(target.parent_path());
        registry::write_file(target, content);
    }
}

} // namespace

std::set<std::string> default_open_formats() {
    return {"csv",  "json", "geojson", "xml",     "gml", "html",
            "rdf",  "turtle", "json-ld", "txt",   "ods"};
}

std::set<std::string> default_open_licenses() {
    return {
        "http://dcat-ap.de/def/licenses/dl-by-de/2.0",
        "http://dcat-ap.de/def/licenses/dl-by-de/1.0",
        "http://dcat-ap.de/def/licenses/dl-zero-de/2.0",
        "http://dcat-ap.de/def/licenses/cc-by/4.0",
        "http://dcat-ap.de/def/licenses/cc-by-sa/4.0",
        "http://dcat-ap.de/def/licenses/cc-by-de/3.0",
        "http://dcat-ap.de/def/licenses/cc-zero",
        "http://dcat-ap.de/def/licenses/geonutz/20130319",
        "http://dcat-ap.de/def/licenses/odc-by",
        "http://dcat-ap.de/def/licenses/odc-odbl",
        "http://dcat-ap.de/def/licenses/odc-pddl",
        "http://www.opendefinition.org/licenses/cc-by",
        "http://www.opendefinition.org/licenses/cc-by-sa",
        "http://www.opendefinition.org/licenses/cc-zero",
        "http://www.opendefinition.org/licenses/odc-by",
        "http://www.opendefinition.org/licenses/odc-odbl",
        "http://www.opendefinition.org/licenses/odc-pddl",
        "https://creativecommons.org/licenses/by/4.0/",
        "https://creativecommons.org/licenses/by-sa/4.0/",
        "https://creativecommons.org/publicdomain/zero/1.0/",
        "https://www.govdata.de/dl-de/by-2-0",
        "https://www.govdata.de/dl-de/zero-2-0",
    };
}

std::string config_hash(const RunConfig &config) {
    std::ostringstream canon;
    canon << "portal_list=" << config.portal_list_path << '\n'
          << "registry=" << config.registry_dir << '\n'
          << "open_licenses=" << config.open_license_path << '\n'
          << "open_formats=" << config.open_format_path << '\n'
          << "locations=" << config.location_table_path << '\n'
          << "format_aliases=" << config.format_alias_path << '\n'
          << "stopwords=" << config.stopwords << '\n'
          << "topics_field=" << config.topics_field << '\n'
          << "offline=" << (config.offline ? 1 : 0) << '\n'
          << "seed=" << config.seed << '\n'
          << "concurrency=" << config.concurrency << '\n'
          << "timeout=" << config.timeout_s << '\n'
          << "k_topics=" << config.k_topics << '\n'
          << "iterations=" << config.iterations << '\n'
          << "page_size=" << config.page_size << '\n'
          << "max_retries=" << config.max_retries << '\n'
          << "per_host=" << config.per_host_limit << '\n'
          << "redirects=" << config.redirect_limit << '\n'
          << "cache_ttl=" << config.cache_ttl_days << '\n'
          << "probe_method=" << config.probe_method << '\n';
    if (config.crawl_date)
        canon << "crawl_date=" << config.crawl_date->str() << '\n';
    for (const auto &[from, to] : config.namespace_rewrites)
        canon << "rewrite=" << from << "=>" << to << '\n';
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(text::fnv1a64(canon.str())));
    return buf;
}

int cmd_crawl(const RunConfig &config, net::HttpClient *client, std::ostream &out,
              std::ostream &err) {
    if (config.portal_list_path.empty()) {
        err << "crawl requires --portal-list\n";
        return 1;
    }
    model::PortalList list;
    try {
        list = model::parse_portal_list(registry::read_file(config.portal_list_path));
    } catch (const std::exception &e) {
        err << "portal list: " << e.what() << '\n';
        return 1;
    }
    if (list.portals.empty()) {
        err << "portal list " << config.portal_list_path << " contains no portals\n";
        return 1;
    }

    registry::Paths paths{config.registry_dir};
    std::error_code ec;
    fs::create_directories(paths.catalogs_dir(), ec);
    if (ec) {
        err << "cannot create registry directory " << paths.root.string() << ": "
            << ec.message() << '\n';
        return 2;
    }

    try {
        RegistryLock lock(paths.lock_file());

        model::LandscapeRegistry reg;
        reg.landscape_id = list.landscape_id;
        reg.portals = list.portals;

        ingest::PipelineOptions options;
        options.concurrency = config.concurrency;
        options.page_size = config.page_size;
        options.max_retries = config.max_retries;
        options.timeout = std::chrono::seconds(config.timeout_s);
        options.crawl_date = effective_date(config);
        options.namespace_rewrites = config.namespace_rewrites;

        auto owned = owned_client(client);
        auto outcomes = ingest::run_pipeline(reg, *client, options);

        registry::write_file(paths.portals_csv(), model::render_portal_list(list));
        auto info = registry::load_crawl_info(paths).value_or(registry::CrawlInfo{});
        info.landscape_id = list.landscape_id;
        for (const auto &catalog : reg.merged_catalogs) {
            registry::save_catalog(paths, catalog.source_portal, catalog.triples);
            info.crawl_dates[catalog.source_portal] = catalog.crawl_date;
        }
        registry::save_crawl_info(paths, info);

        auto loaded = registry::load(paths);
        if (!loaded.registry.merged_catalogs.empty()) {
            try {
                auto merged = model::merge_catalogs(loaded.registry.merged_catalogs);
                registry::write_file(paths.merged_ttl(), turtle::to_turtle(merged.triples));
            } catch (const std::exception &e) {
                err << "merged.ttl not written: " << e.what() << '\n';
            }
        }

        std::size_t succeeded = 0;
        for (const auto &o : outcomes) {
            if (o.ok) {
                ++succeeded;
                out << "portal " << o.portal_id << ": ok, " << o.triple_count << " triples";
                if (o.repair.removed_lines || o.repair.repaired_iris ||
                    o.repair.skipped_packages)
                    out << " (repaired: " << o.repair.removed_lines << " lines removed, "
                        << o.repair.repaired_iris << " IRIs fixed, "
                        << o.repair.skipped_packages << " packages skipped)";
                out << '\n';
            } else {
                out << "portal " << o.portal_id << ": FAILED: " << o.error << '\n';
            }
        }
        out << succeeded << '/' << outcomes.size() << " portals harvested\n";
        if (outcomes.empty()) {
            err << "portal list has no crawlable portals (api_kind is none everywhere)\n";
            return 2;
        }
        return succeeded > 0 ? 0 : 2;
    } catch (const std::exception &e) {
        err << "crawl failed: " << e.what() << '\n';
        return 2;
    }
}

int cmd_analyze(const RunConfig &config, net::HttpClient *client, std::ostream &out,
                std::ostream &err) {
    registry::Paths paths{config.registry_dir};
    if (!fs::exists(paths.root)) {
        err << "registry directory " << paths.root.string() << " does not exist\n";
        return 2;
    }
    try {
        RegistryLock lock(paths.lock_file());

        auto loaded = registry::load(paths, config.crawl_date);
        if (loaded.registry.merged_catalogs.empty()) {
            err << "registry " << paths.root.string() << " holds no catalog files\n";
            return 2;
        }

        model::FormatTable formats =
            config.format_alias_path.empty()
                ? model::FormatTable::defaults()
                : model::FormatTable::load_csv(registry::read_file(config.format_alias_path));

        metrics::RegistryView view = metrics::build_view(loaded.registry, formats);

        report::Content content;
        content.key_data = metrics::key_data(view);
        content.uniqueness = metrics::uniqueness(view);
        content.interoperability = metrics::interoperability_ratios(
            view, load_token_set(config.open_format_path, default_open_formats()));
        content.licenses = metrics::license_ratios(
            view, load_token_set(config.open_license_path, default_open_licenses()));
        content.replica = metrics::replica_ratio(view);
        content.keyword_ic = metrics::keyword_ic(view);
        content.completeness = metrics::completeness(view);
        content.freshness_all = metrics::freshness(view);
        {
            std::set<std::string> portals;
            for (const auto &[node, portal] : view.catalog_portal)
                portals.insert(portal);
            for (const auto &portal : portals)
                content.freshness_per_portal[portal] = metrics::freshness(view, portal);
        }
        if (!config.location_table_path.empty()) {
            auto table =
                metrics::parse_location_table(registry::read_file(config.location_table_path));
            content.location = metrics::location_coverage(view.portals, table);
        } else {
            content.location_skip_reason = "no region table supplied";
        }
        content.format_histogram = metrics::format_histogram(view);
        content.namespaces = metrics::namespace_distribution(view);

        if (config.offline) {
            content.accessibility_skip_reason = "network disabled (--offline)";
        } else {
            auto owned = owned_client(client);
            auto urls = collect_urls(view.datasets);
            auto run = probe_with_cache(urls, config, paths, *client);
            report::AccessibilityBlock block;
            block.distribution_ratio =
                accessibility::accessibility_ratio(run.results, view.datasets);
            block.url_level_ratio = accessibility::url_ratio(run.results);
            block.histogram = accessibility::status_histogram(run.results);
            block.probed_urls = run.probed;
            block.cache_hits = run.cache_hits;
            content.accessibility = block;
        }

        try {
            auto stopwords = resolve_stopwords(config);
            auto field = topics::text_field_from_string(config.topics_field);
            auto corpus = topics::build_corpus(view, field, stopwords);
            auto model = topics::fit_lda(corpus, config.k_topics, config.iterations,
                                         config.seed);
            report::TopicsBlock block;
            block.k = model.k;
            block.iterations = model.iterations;
            block.seed = model.seed;
            block.alpha = model.alpha;
            block.beta = model.beta;
            block.perplexity = model.perplexity;
            block.documents = corpus.documents.size();
            block.vocabulary = corpus.vocabulary.size();
            block.dropped_documents = corpus.dropped_documents;
            block.field = config.topics_field;
            block.stopword_list = corpus.stopword_list_id;
            block.terms = topics::top_terms(model, corpus, 10);
            content.topics = block;
        } catch (const std::exception &e) {
            content.topics_skip_reason = e.what();
        }

        content.tallies["blank_dataset_nodes"] = view.tally.blank_datasets;
        content.tallies["malformed_dates"] = view.tally.malformed_dates;
        for (const auto &note : loaded.notes)
            content.notes.push_back(note.file + ": " + note.message);

        report::Inputs inputs;
        inputs.landscape_id = loaded.registry.landscape_id;
        inputs.registry_dir = config.registry_dir;
        inputs.catalog_files = loaded.catalog_files;
        for (const auto &catalog : loaded.registry.merged_catalogs)
            inputs.crawl_dates[catalog.source_portal] = catalog.crawl_date.str();
        inputs.portal_count = loaded.registry.portals.size();
        inputs.catalog_count = loaded.registry.merged_catalogs.size();
        inputs.triple_count = view.merged.triples.size();
        inputs.config_hash = config_hash(config);

        auto rep = report::assemble(inputs, content);
        fs::create_directories(fs::path(config.report_dir));
        write_report_tree(config.report_dir, report::render_files(rep, "json"));
        write_report_tree(config.report_dir, report::render_files(rep, "markdown"));
        write_report_tree(config.report_dir, report::render_files(rep, "csv-bundle"));

        const auto &kd = *content.key_data;
        out << "analyzed " << inputs.catalog_count << " catalog(s): " << kd.dataset_count
            << " datasets, " << kd.distribution_count << " distributions, "
            << kd.access_url_count << " access URLs\n";
        out << "report written to " << (fs::path(config.report_dir) / "report.json").string()
            << '\n';
        return 0;
    } catch (const std::exception &e) {
        err << "analyze failed: " << e.what() << '\n';
        return 2;
    }
}

int cmd_check_urls(const RunConfig &config, net::HttpClient *client, std::ostream &out,
                   std::ostream &err) {
    registry::Paths paths{config.registry_dir};
    if (!fs::exists(paths.root)) {
        err << "registry directory " << paths.root.string() << " does not exist\n";
        return 2;
    }
    try {
        RegistryLock lock(paths.lock_file());

        auto loaded = registry::load(paths, config.crawl_date);
        if (loaded.registry.merged_catalogs.empty()) {
            err << "registry " << paths.root.string() << " holds no catalog files\n";
            return 2;
        }
        metrics::RegistryView view =
            metrics::build_view(loaded.registry, model::FormatTable::defaults());
        auto urls = collect_urls(view.datasets);

        auto owned = owned_client(client);
        auto run = probe_with_cache(urls, config, paths, *client);

        auto histogram = accessibility::status_histogram(run.results);
        out << "probed " << run.probed << " URL(s), " << run.cache_hits
            << " served from cache\n";
        for (const auto &[cls, count] : histogram)
            out << "  " << cls << ": " << count << '\n';

        if (run.probed > 0 && run.fresh_with_status == 0) {
            err << "no probed URL returned an HTTP status; network appears unavailable\n";
            return 2;
        }
        return 0;
    } catch (const std::exception &e) {
        err << "check-urls failed: " << e.what() << '\n';
        return 2;
    }
}

int cmd_report(const RunConfig &config, std::ostream &out, std::ostream &err) {
    fs::path source = fs::path(config.report_dir) / "report.json";
    try {
        auto rep = report::parse_json(registry::read_file(source));
        auto files = report::render_files(rep, config.report_format);
        write_report_tree(config.report_dir, files);
        for (const auto &[rel, content] : files)
            out << "wrote " << (fs::path(config.report_dir) / rel).string() << '\n';
        return 0;
    } catch (const std::exception &e) {
        err << "report rendering failed: " << e.what() << '\n';
        return 2;
    }
}

int cmd_topics(const RunConfig &config, std::ostream &out, std::ostream &err) {
    registry::Paths paths{config.registry_dir};
    if (!fs::exists(paths.root)) {
        err << "registry directory " << paths.root.string() << " does not exist\n";
        return 2;
    }
    try {
        auto loaded = registry::load(paths, config.crawl_date);
        if (loaded.registry.merged_catalogs.empty()) {
            err << "registry " << paths.root.string() << " holds no catalog files\n";
            return 2;
        }
        metrics::RegistryView view =
            metrics::build_view(loaded.registry, model::FormatTable::defaults());
        auto stopwords = resolve_stopwords(config);
        auto field = topics::text_field_from_string(config.topics_field);
        auto corpus = topics::build_corpus(view, field, stopwords);
        auto model = topics::fit_lda(corpus, config.k_topics, config.iterations, config.seed);
        auto ranked = topics::top_terms(model, corpus, 10);

        out << "documents: " << corpus.documents.size()
            << ", vocabulary: " << corpus.vocabulary.size()
            << ", dropped: " << corpus.dropped_documents << '\n';
        char perp[32];
        std::snprintf(perp, sizeof perp, "%.3f", model.perplexity);
        out << "k: " << model.k << ", iterations: " << model.iterations
            << ", perplexity: " << perp << '\n';
        for (std::size_t t = 0; t < ranked.size(); ++t) {
            out << "topic " << t << ':';
            for (const auto &term : ranked[t])
                out << ' ' << term.term;
            out << '\n';
        }
        return 0;
    } catch (const std::exception &e) {
        err << "topics failed: " << e.what() << '\n';
        return 2;
    }
}

int run_cli(const std::vector<std::string> &args, net::HttpClient *client,
            std::ostream *out_stream, std::ostream *err_stream) {
    std::ostream &out = out_stream ? *out_stream : std::cout;
    std::ostream &err = err_stream ? *err_stream : std::cerr;

    RunConfig config;
    std::string crawl_date_text;
    std::vector<std::string> rewrite_specs;

    CLI::App app{"Open data catalog quality auditing"};
    app.name("odaudit");
    app.fallthrough();
    app.require_subcommand(1);

    app.add_option("--portal-list", config.portal_list_path,
                   "CSV portal list (id,name,endpoint_url,api_kind,location_code,landscape_id)");
    app.add_option("--registry", config.registry_dir, "Registry directory")
        ->capture_default_str();
    app.add_option("--report-dir", config.report_dir, "Report output directory")
        ->capture_default_str();
    app.add_flag("--offline", config.offline, "Skip every network operation");
    app.add_option("--seed", config.seed, "Random seed")->capture_default_str();
    app.add_option("--concurrency", config.concurrency, "Concurrent portals/probes")
        ->capture_default_str();
    app.add_option("--timeout", config.timeout_s, "HTTP timeout in seconds")
        ->capture_default_str();
    app.add_option("--k-topics", config.k_topics, "Number of topics")->capture_default_str();
    app.add_option("--iterations", config.iterations, "Gibbs sampling iterations")
        ->capture_default_str();
    app.add_option("--open-licenses", config.open_license_path,
                   "Open-license IRI list (one per line)");
    app.add_option("--open-formats", config.open_format_path,
                   "Open-format token list (one per line)");
    app.add_option("--locations", config.location_table_path,
                   "Region table CSV (level,region_count)");
    app.add_option("--format-aliases", config.format_alias_path,
                   "Format alias CSV (alias,canonical)");
    app.add_option("--stopwords", config.stopwords, "Stopword list: de, en, or a file path")
        ->capture_default_str();
    app.add_option("--topics-field", config.topics_field, "Text field for topics")
        ->check(CLI::IsMember({"title", "description", "keywords"}))
        ->capture_default_str();
    app.add_option("--page-size", config.page_size, "API page size")->capture_default_str();
    app.add_option("--retries", config.max_retries, "Fetch retries")->capture_default_str();
    app.add_option("--per-host", config.per_host_limit, "Concurrent probes per host")
        ->capture_default_str();
    app.add_option("--redirects", config.redirect_limit, "Redirect hops to follow")
        ->capture_default_str();
    app.add_option("--cache-ttl", config.cache_ttl_days, "Probe cache lifetime in days")
        ->capture_default_str();
    app.add_option("--crawl-date", crawl_date_text, "Override today's date (YYYY-MM-DD)");
    app.add_option("--rewrite", rewrite_specs, "Namespace rewrite OLD=NEW (repeatable)");
    app.add_option("--format", config.report_format, "Report rendering")
        ->check(CLI::IsMember({"json", "markdown", "csv-bundle"}))
        ->capture_default_str();
    app.add_option("--probe-method", config.probe_method, "URL probe method")
        ->check(CLI::IsMember({"head-then-get", "get"}))
        ->capture_default_str();

    auto *crawl = app.add_subcommand("crawl", "Harvest every API portal into the registry");
    auto *analyze = app.add_subcommand("analyze", "Compute the quality report");
    auto *check = app.add_subcommand("check-urls", "Probe access URLs into the cache");
    auto *report_cmd = app.add_subcommand("report", "Re-render an existing report.json");
    auto *topics_cmd = app.add_subcommand("topics", "Fit and print the topic model");

    std::vector<const char *> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("odaudit");
    for (const auto &arg : args)
        argv.push_back(arg.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    if (!crawl_date_text.empty()) {
        auto parsed = model::Date::parse(crawl_date_text);
        if (!parsed) {
            err << "invalid --crawl-date '" << crawl_date_text << "'\n";
            return 1;
        }
        config.crawl_date = parsed;
    }
    for (const auto &spec : rewrite_specs) {
        auto eq = spec.find('=');
        if (eq == std::string::npos || eq == 0) {
            err << "invalid --rewrite '" << spec << "', expected OLD=NEW\n";
            return 1;
        }
        config.namespace_rewrites[spec.substr(0, eq)] = spec.substr(eq + 1);
    }
    if (config.concurrency < 1 || config.page_size < 1 || config.timeout_s < 1) {
        err << "--concurrency, --page-size, and --timeout must be positive\n";
        return 1;
    }

    if (crawl->parsed())
        return cmd_crawl(config, client, out, err);
    if (analyze->parsed())
        return cmd_analyze(config, client, out, err);
    if (check->parsed())
        return cmd_check_urls(config, client, out, err);
    if (report_cmd->parsed())
        return cmd_report(config, out, err);
    if (topics_cmd->parsed())
        return cmd_topics(config, out, err);
    err << "missing subcommand\n";
    return 1;
}

} // namespace odaudit::cli
