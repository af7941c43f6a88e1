#include "odaudit/accessibility.hpp"

#include "odaudit/registry.hpp"
#include "odaudit/url.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <condition_variable>
#include <mutex>
#include <set>
#include <thread>

namespace odaudit::accessibility {

using nlohmann::json;

std::string_view to_string(Outcome outcome) {
    switch (outcome) {
    case Outcome::status: return "status";
    case Outcome::timeout: return "timeout";
    case Outcome::connection_error: return "connection_error";
    case Outcome::invalid_url: return "invalid_url";
    }
    return "connection_error";
}

namespace {

std::optional<Outcome> outcome_from_string(std::string_view s) {
    if (s == "status")
        return Outcome::status;
    if (s == "timeout")
        return Outcome::timeout;
    if (s == "connection_error")
        return Outcome::connection_error;
    if (s == "invalid_url")
        return Outcome::invalid_url;
    return std::nullopt;
}

ProbeResult probe_one(const std::string &raw_url, const ProbeConfig &config,
                      net::HttpClient &client) {
    ProbeResult result;
    result.url = raw_url;
    auto start = std::chrono::steady_clock::now();
    auto finish = [&] {
        result.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::steady_clock::now() - start);
        return result;
    };

    auto parsed = url::parse(raw_url);
    if (!parsed || !parsed->is_http() || parsed->host.empty()) {
        result.outcome = Outcome::invalid_url;
        return finish();
    }

    net::RequestOptions options;
    options.timeout = config.timeout;
    options.keep_body = false;
    options.follow_redirects = false;
    options.headers = {{"User-Agent", "odaudit/0.1"}, {"Accept", "*/*"}};

    url::Url current = *parsed;
    for (int hop = 0;; ++hop) {
        std::string method =
            config.method == ProbeMethod::head_then_get ? "HEAD" : "GET";
        auto response = client.request(method, current.str(), options);
        if (response.ok() && method == "HEAD" &&
            (response.status == 405 || response.status == 501))
            response = client.request("GET", current.str(), options);

        if (!response.ok()) {
            switch (response.transport) {
            case net::Transport::timeout:
                result.outcome = Outcome::timeout;
                break;
            case net::Transport::invalid_url:
                result.outcome = Outcome::invalid_url;
                break;
            default:
                result.outcome = Outcome::connection_error;
                break;
            }
            return finish();
        }

        if (response.status >= 300 && response.status < 400 && hop < config.redirect_limit) {
            std::string location = response.header("location");
            if (!location.empty()) {
                auto next = url::resolve(current, location);
                if (next && next->is_http() && !next->host.empty()) {
                    current = *next;
                    result.redirects_followed = hop + 1;
                    continue;
                }
            }
        }
        result.outcome = Outcome::status;
        result.status_code = response.status;
        return finish();
    }
}

} // namespace

std::vector<ProbeResult> probe_all(const std::vector<std::string> &urls,
                                   const ProbeConfig &config, net::HttpClient &client) {
    std::vector<std::string> queue(urls.begin(), urls.end());
    std::sort(queue.begin(), queue.end());
    queue.erase(std::unique(queue.begin(), queue.end()), queue.end());

    std::vector<ProbeResult> results(queue.size());
    std::vector<bool> taken(queue.size(), false);
    std::size_t completed = 0;
    std::map<std::string, int> in_flight;
    std::mutex mutex;
    std::condition_variable cv;

    auto host_of = [](const std::string &u) -> std::string {
        auto parsed = url::parse(u);
        if (parsed && parsed->is_http() && !parsed->host.empty())
            return parsed->host_key();
        return {};
    };

    int per_host = std::max(1, std::min(config.per_host_limit, config.concurrency));
    auto worker = [&] {
        std::unique_lock lock(mutex);
        for (;;) {
            std::size_t pick = queue.size();
            for (std::size_t i = 0; i < queue.size(); ++i) {
                if (taken[i])
                    continue;
                std::string host = host_of(queue[i]);
                if (host.empty() || in_flight[host] < per_host) {
                    pick = i;
                    break;
                }
            }
            if (pick == queue.size()) {
                if (completed == queue.size())
                    return;
                bool all_taken = true;
                for (std::size_t i = 0; i < queue.size(); ++i)
                    if (!taken[i])
                        all_taken = false;
                if (all_taken)
                    return;
                cv.wait(lock);
                continue;
            }
            taken[pick] = true;
            std::string host = host_of(queue[pick]);
            if (!host.empty())
                ++in_flight[host];
            lock.unlock();
            ProbeResult result = probe_one(queue[pick], config, client);
            lock.lock();
            results[pick] = std::move(result);
            ++completed;
            if (!host.empty())
                --in_flight[host];
            cv.notify_all();
        }
    };

    std::size_t thread_count = std::min<std::size_t>(std::max(1, config.concurrency),
                                                     std::max<std::size_t>(1, queue.size()));
    std::vector<std::thread> threads;
    threads.reserve(thread_count);
    for (std::size_t i = 0; i < thread_count; ++i)
        threads.emplace_back(worker);
    for (auto &t : threads)
        t.join();
    return results;
}

metrics::Ratio accessibility_ratio(const std::vector<ProbeResult> &results,
                                   const std::vector<model::DatasetRecord> &datasets) {
    std::set<std::string> working;
    for (const auto &r : results)
        if (r.outcome == Outcome::status && r.status_code == 200)
            working.insert(r.url);

    metrics::Ratio ratio;
    for (const auto &ds : datasets)
        for (const auto &dist : ds.distributions) {
            ++ratio.denominator;
            if (dist.access_url && working.count(*dist.access_url))
                ++ratio.numerator;
        }
    return ratio;
}

metrics::Ratio url_ratio(const std::vector<ProbeResult> &results) {
    metrics::Ratio ratio;
    ratio.denominator = results.size();
    for (const auto &r : results)
        if (r.outcome == Outcome::status && r.status_code == 200)
            ++ratio.numerator;
    return ratio;
}

std::map<std::string, std::uint64_t> status_histogram(
    const std::vector<ProbeResult> &results) {
    std::map<std::string, std::uint64_t> histogram;
    for (const auto &r : results) {
        if (r.outcome != Outcome::status) {
            ++histogram["no-response"];
        } else if (r.status_code == 200) {
            ++histogram["200"];
        } else if (r.status_code >= 300 && r.status_code < 400) {
            ++histogram["3xx-final"];
        } else if (r.status_code >= 400 && r.status_code < 500) {
            ++histogram["4xx"];
        } else if (r.status_code >= 500 && r.status_code < 600) {
            ++histogram["5xx"];
        } else {
            ++histogram["other"];
        }
    }
    return histogram;
}

ProbeCache ProbeCache::load(const std::filesystem::path &path) {
    ProbeCache cache;
    std::error_code ec;
    if (!std::filesystem::exists(path, ec))
        return cache;
    std::string content = registry::read_file(path);
    std::size_t start = 0;
    while (start < content.size()) {
        std::size_t end = content.find('\n', start);
        std::string line = content.substr(
            start, end == std::string::npos ? content.size() - start : end - start);
        start = end == std::string::npos ? content.size() : end + 1;
        if (line.empty())
            continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object())
            continue;
        CacheEntry entry;
        entry.result.url = j.value("url", "");
        auto outcome = outcome_from_string(j.value("outcome", ""));
        auto date = model::Date::parse(j.value("date", ""));
        if (entry.result.url.empty() || !outcome || !date)
            continue;
        entry.result.outcome = *outcome;
        entry.result.status_code = j.value("status", 0);
        entry.result.redirects_followed = j.value("redirects", 0);
        entry.result.elapsed = std::chrono::milliseconds(j.value("elapsed_ms", 0));
        entry.probe_date = *date;
        cache.entries_[entry.result.url] = std::move(entry);
    }
    return cache;
}

void ProbeCache::save(const std::filesystem::path &path) const {
    std::string out;
    for (const auto &[url, entry] : entries_) {
        json j;
        j["url"] = url;
        j["date"] = entry.probe_date.str();
        j["outcome"] = std::string(to_string(entry.result.outcome));
        j["status"] = entry.result.status_code;
        j["redirects"] = entry.result.redirects_followed;
        j["elapsed_ms"] = static_cast<long>(entry.result.elapsed.count());
        out += j.dump();
        out.push_back('\n');
    }
    registry::write_file(path, out);
}

const CacheEntry *ProbeCache::fresh(const std::string &url, const model::Date &today,
                                    int ttl_days) const {
    auto it = entries_.find(url);
    if (it == entries_.end())
        return nullptr;
    long age = model::days_between(it->second.probe_date, today);
    if (age < 0 || age > ttl_days)
        return nullptr;
    return &it->second;
}

void ProbeCache::put(const ProbeResult &result, const model::Date &probe_date) {
    entries_[result.url] = CacheEntry{result, probe_date};
}

} // namespace odaudit::accessibility
