#include <doctest.h>

#include "odaudit/accessibility.hpp"
#include "odaudit/http_client.hpp"
#include "odaudit/model.hpp"

#include "support.hpp"

#include <httplib.h>

#include <algorithm>
#include <chrono>
#include <thread>

using namespace odaudit;
using accessibility::Outcome;
using accessibility::ProbeConfig;
using accessibility::ProbeMethod;
using accessibility::ProbeResult;

namespace {

const ProbeResult *find_result(const std::vector<ProbeResult> &results,
                               const std::string &url) {
    for (const auto &r : results)
        if (r.url == url)
            return &r;
    return nullptr;
}

} // namespace

TEST_CASE("probe_all classifies statuses, redirects, and invalid urls") {
    support::FixtureServer server;
    server.raw().Get("/ok", [](const httplib::Request &, httplib::Response &res) {
        res.set_content("payload", "text/plain");
    });
    server.raw().Get("/nocontent", [](const httplib::Request &, httplib::Response &res) {
        res.status = 204;
    });
    server.raw().Get("/missing", [](const httplib::Request &, httplib::Response &res) {
        res.status = 404;
    });
    server.raw().Get("/fail", [](const httplib::Request &, httplib::Response &res) {
        res.status = 500;
    });
    server.raw().Get("/hop", [](const httplib::Request &, httplib::Response &res) {
        res.status = 302;
        res.set_header("Location", "/ok");
    });
    server.raw().Get("/loop", [](const httplib::Request &, httplib::Response &res) {
        res.status = 302;
        res.set_header("Location", "/loop");
    });
    server.start();

    std::vector<std::string> urls = {
        server.url("/ok"),
        server.url("/ok"), // duplicates are probed once
        server.url("/nocontent"),
        server.url("/missing"),
        server.url("/fail"),
        server.url("/hop"),
        server.url("/loop"),
        "ftp://127.0.0.1/export.csv",
    };

    ProbeConfig config;
    config.concurrency = 4;
    config.redirect_limit = 3;
    config.timeout = std::chrono::milliseconds{5000};
    config.method = ProbeMethod::get;
    auto client = net::make_http_client();
    auto results = accessibility::probe_all(urls, config, *client);

    REQUIRE(results.size() == 7);
    CHECK(std::is_sorted(results.begin(), results.end(),
                         [](const ProbeResult &a, const ProbeResult &b) {
                             return a.url < b.url;
                         }));

    const auto *ok = find_result(results, server.url("/ok"));
    REQUIRE(ok != nullptr);
    CHECK(ok->outcome == Outcome::status);
    CHECK(ok->status_code == 200);
    CHECK(ok->redirects_followed == 0);

    const auto *hop = find_result(results, server.url("/hop"));
    REQUIRE(hop != nullptr);
    CHECK(hop->outcome == Outcome::status);
    CHECK(hop->status_code == 200);
    CHECK(hop->redirects_followed == 1);

    const auto *loop = find_result(results, server.url("/loop"));
    REQUIRE(loop != nullptr);
    CHECK(loop->outcome == Outcome::status);
    CHECK(loop->status_code == 302);
    CHECK(loop->redirects_followed == 3);

    const auto *nocontent = find_result(results, server.url("/nocontent"));
    REQUIRE(nocontent != nullptr);
    CHECK(nocontent->status_code == 204);

    const auto *missing = find_result(results, server.url("/missing"));
    REQUIRE(missing != nullptr);
    CHECK(missing->status_code == 404);

    const auto *fail = find_result(results, server.url("/fail"));
    REQUIRE(fail != nullptr);
    CHECK(fail->status_code == 500);

    const auto *ftp = find_result(results, "ftp://127.0.0.1/export.csv");
    REQUIRE(ftp != nullptr);
    CHECK(ftp->outcome == Outcome::invalid_url);

    auto histogram = accessibility::status_histogram(results);
    CHECK(histogram["200"] == 2);
    CHECK(histogram["3xx-final"] == 1);
    CHECK(histogram["4xx"] == 1);
    CHECK(histogram["5xx"] == 1);
    CHECK(histogram["other"] == 1);
    CHECK(histogram["no-response"] == 1);
    std::uint64_t total = 0;
    for (const auto &[bucket, count] : histogram)
        total += count;
    CHECK(total == results.size());

    auto ratio = accessibility::url_ratio(results);
    CHECK(ratio.numerator == 2);
    CHECK(ratio.denominator == 7);
}

TEST_CASE("unprobeable urls never reach the network") {
    support::FixtureServer server;
    server.raw().Get("/ok", [](const httplib::Request &, httplib::Response &res) {
        res.set_content("payload", "text/plain");
    });
    server.start();

    // Same host and port as the live server, but not http(s) or not a URL.
    std::vector<std::string> urls = {
        "ftp://" + std::string("127.0.0.1:") + std::to_string(server.port()) + "/ok",
        "mailto:data@example.org",
        "not a url",
        "",
    };
    ProbeConfig config;
    config.method = ProbeMethod::get;
    auto client = net::make_http_client();
    auto results = accessibility::probe_all(urls, config, *client);

    REQUIRE(results.size() == 4);
    for (const auto &r : results) {
        CHECK(r.outcome == Outcome::invalid_url);
        CHECK(r.status_code == 0);
    }
    CHECK(server.total_requests() == 0);
}

TEST_CASE("head probing falls back to get when head is rejected") {
    support::FixtureServer server;
    server.raw().Get("/headless", [](const httplib::Request &req, httplib::Response &res) {
        if (req.method == "HEAD") {
            res.status = 405;
            return;
        }
        res.set_content("payload", "text/plain");
    });
    server.raw().Get("/ok", [](const httplib::Request &, httplib::Response &res) {
        res.set_content("payload", "text/plain");
    });
    server.start();

    auto client = net::make_http_client();

    ProbeConfig head_first;
    head_first.method = ProbeMethod::head_then_get;
    auto results =
        accessibility::probe_all({server.url("/headless")}, head_first, *client);
    REQUIRE(results.size() == 1);
    CHECK(results[0].outcome == Outcome::status);
    CHECK(results[0].status_code == 200);
    CHECK(server.total_requests() == 2); // HEAD, then the GET retry

    server.reset_counters();
    results = accessibility::probe_all({server.url("/ok")}, head_first, *client);
    REQUIRE(results.size() == 1);
    CHECK(results[0].status_code == 200);
    CHECK(server.total_requests() == 1); // HEAD alone settles it

    server.reset_counters();
    ProbeConfig get_only;
    get_only.method = ProbeMethod::get;
    results = accessibility::probe_all({server.url("/headless")}, get_only, *client);
    REQUIRE(results.size() == 1);
    CHECK(results[0].status_code == 200);
    CHECK(server.total_requests() == 1);
}

TEST_CASE("timeouts and refused connections are kept apart") {
    support::FixtureServer server;
    server.raw().Get("/slow", [](const httplib::Request &, httplib::Response &res) {
        std::this_thread::sleep_for(std::chrono::milliseconds{400});
        res.set_content("late", "text/plain");
    });
    server.start();

    ProbeConfig config;
    config.method = ProbeMethod::get;
    config.timeout = std::chrono::milliseconds{60};
    auto client = net::make_http_client();

    auto results = accessibility::probe_all({server.url("/slow")}, config, *client);
    REQUIRE(results.size() == 1);
    CHECK(results[0].outcome == Outcome::timeout);

    int port = server.port();
    server.stop();
    std::string dead = "http://127.0.0.1:" + std::to_string(port) + "/ok";
    results = accessibility::probe_all({dead}, config, *client);
    REQUIRE(results.size() == 1);
    CHECK(results[0].outcome == Outcome::connection_error);

    auto histogram = accessibility::status_histogram(results);
    CHECK(histogram["no-response"] == 1);
}

TEST_CASE("per-host probing stays within the configured limit") {
    support::FixtureServer server;
    server.raw().Get(R"(/busy/(\d+))", [](const httplib::Request &, httplib::Response &res) {
        std::this_thread::sleep_for(std::chrono::milliseconds{25});
        res.set_content("done", "text/plain");
    });
    server.start();

    std::vector<std::string> urls;
    for (int i = 0; i < 10; ++i)
        urls.push_back(server.url("/busy/" + std::to_string(i)));

    ProbeConfig config;
    config.method = ProbeMethod::get;
    config.concurrency = 8;
    config.per_host_limit = 2;
    auto client = net::make_http_client();
    auto results = accessibility::probe_all(urls, config, *client);

    REQUIRE(results.size() == 10);
    for (const auto &r : results)
        CHECK(r.status_code == 200);
    CHECK(server.total_requests() == 10);
    CHECK(server.max_in_flight() <= 2);
}

TEST_CASE("accessibility ratio counts distributions against working urls") {
    std::vector<ProbeResult> results(3);
    results[0].url = "http://files.test/good.csv";
    results[0].outcome = Outcome::status;
    results[0].status_code = 200;
    results[1].url = "http://files.test/gone.csv";
    results[1].outcome = Outcome::status;
    results[1].status_code = 404;
    results[2].url = "http://files.test/dead.csv";
    results[2].outcome = Outcome::connection_error;

    model::DatasetRecord a;
    a.node = rdf::Term::iri("http://portal.test/ds/1");
    model::DistributionRecord a1;
    a1.access_url = "http://files.test/good.csv";
    model::DistributionRecord a2;
    a2.access_url = "http://files.test/gone.csv";
    a.distributions = {a1, a2};

    model::DatasetRecord b;
    b.node = rdf::Term::iri("http://portal.test/ds/2");
    model::DistributionRecord b1; // no access URL at all
    model::DistributionRecord b2; // shares the working URL
    b2.access_url = "http://files.test/good.csv";
    b.distributions = {b1, b2};

    auto ratio = accessibility::accessibility_ratio(results, {a, b});
    CHECK(ratio.numerator == 2);
    CHECK(ratio.denominator == 4);

    auto urls = accessibility::url_ratio(results);
    CHECK(urls.numerator == 1);
    CHECK(urls.denominator == 3);
}

TEST_CASE("probe cache persists results and enforces its ttl") {
    support::TempDir dir;
    auto path = dir / "probes.jsonl";

    ProbeResult good;
    good.url = "http://files.test/a.csv";
    good.outcome = Outcome::status;
    good.status_code = 200;
    good.redirects_followed = 2;
    good.elapsed = std::chrono::milliseconds{150};

    ProbeResult bad;
    bad.url = "http://files.test/b.csv";
    bad.outcome = Outcome::invalid_url;

    accessibility::ProbeCache cache;
    cache.put(good, *model::Date::parse("2024-05-01"));
    cache.put(bad, *model::Date::parse("2024-04-20"));
    CHECK(cache.size() == 2);
    cache.save(path);

    auto loaded = accessibility::ProbeCache::load(path);
    REQUIRE(loaded.size() == 2);

    const auto *entry = loaded.fresh(good.url, *model::Date::parse("2024-05-08"), 7);
    REQUIRE(entry != nullptr); // age equal to the ttl still counts
    CHECK(entry->result.outcome == Outcome::status);
    CHECK(entry->result.status_code == 200);
    CHECK(entry->result.redirects_followed == 2);
    CHECK(entry->result.elapsed == std::chrono::milliseconds{150});
    CHECK(entry->probe_date.str() == "2024-05-01");

    CHECK(loaded.fresh(good.url, *model::Date::parse("2024-05-09"), 7) == nullptr);
    CHECK(loaded.fresh(good.url, *model::Date::parse("2024-04-30"), 7) == nullptr);
    CHECK(loaded.fresh("http://files.test/unknown.csv",
                       *model::Date::parse("2024-05-02"), 7) == nullptr);

    const auto *invalid = loaded.fresh(bad.url, *model::Date::parse("2024-04-21"), 7);
    REQUIRE(invalid != nullptr);
    CHECK(invalid->result.outcome == Outcome::invalid_url);
}

TEST_CASE("probe cache skips unreadable lines and missing files") {
    support::TempDir dir;
    auto missing = accessibility::ProbeCache::load(dir / "absent.jsonl");
    CHECK(missing.size() == 0);

    std::string content;
    content += "not json at all\n";
    content += "{\"url\":\"\",\"outcome\":\"status\",\"date\":\"2024-01-01\"}\n";
    content += "{\"url\":\"http://x/y\",\"outcome\":\"banana\",\"date\":\"2024-01-01\"}\n";
    content += "{\"url\":\"http://x/y\",\"outcome\":\"status\",\"date\":\"2024-13-01\"}\n";
    content +=
        "{\"url\":\"http://x/y\",\"outcome\":\"status\",\"status\":200,\"date\":\"2024-01-01\"}\n";
    support::write_file(dir / "mixed.jsonl", content);

    auto loaded = accessibility::ProbeCache::load(dir / "mixed.jsonl");
    REQUIRE(loaded.size() == 1);
    const auto *entry = loaded.fresh("http://x/y", *model::Date::parse("2024-01-02"), 7);
    REQUIRE(entry != nullptr);
    CHECK(entry->result.status_code == 200);
}
