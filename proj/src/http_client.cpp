#include "odaudit/http_client.hpp"

#include "odaudit/text.hpp"

#include <httplib.h>

#include <cstdlib>

namespace odaudit::net {

std::string FetchResult::header(const std::string &key) const {
    auto it = headers.find(text::lower_ascii(key));
    return it == headers.end() ? std::string{} : it->second;
}

namespace {

struct ProxySetting {
    std::string host;
    int port = 0;
};

std::optional<ProxySetting> proxy_for(const std::string &scheme) {
    const char *names_http[] = {"http_proxy", "HTTP_PROXY"};
    const char *names_https[] = {"https_proxy", "HTTPS_PROXY"};
    const char *value = nullptr;
    for (const char *name : scheme == "https" ? names_https : names_http)
        if ((value = std::getenv(name)) && *value)
            break;
    if (!value || !*value)
        return std::nullopt;
    auto parsed = url::parse(value);
    if (!parsed || parsed->host.empty())
        return std::nullopt;
    ProxySetting p;
    p.host = parsed->host;
    p.port = parsed->port.empty() ? 8080 : std::atoi(parsed->port.c_str());
    return p;
}

class HttplibClient final : public HttpClient {
public:
    FetchResult request(const std::string &method, const std::string &raw_url,
                        const RequestOptions &options) override {
        FetchResult out;
        auto parsed = url::parse(raw_url);
        if (!parsed || !parsed->is_http() || parsed->host.empty()) {
            out.transport = Transport::invalid_url;
            out.error = "not an http(s) URL";
            return out;
        }
        std::string origin = parsed->scheme + "://" + parsed->host;
        if (!parsed->port.empty())
            origin += ":" + parsed->port;

        httplib::Client client(origin);
        long usec = std::chrono::duration_cast<std::chrono::microseconds>(options.timeout)
                        .count();
        time_t sec = usec / 1000000;
        time_t rem = usec % 1000000;
        client.set_connection_timeout(sec, rem);
        client.set_read_timeout(sec, rem);
        client.set_write_timeout(sec, rem);
        client.set_follow_location(options.follow_redirects);
#ifdef CPPHTTPLIB_OPENSSL_SUPPORT
        client.enable_server_certificate_verification(false);
#endif
        if (auto proxy = proxy_for(parsed->scheme))
            client.set_proxy(proxy->host, proxy->port);

        httplib::Headers headers;
        for (const auto &[k, v] : options.headers)
            headers.emplace(k, v);

        std::string path = parsed->path.empty() ? "/" : parsed->path;
        if (parsed->has_query)
            path += "?" + parsed->query;

        httplib::Result result(nullptr, httplib::Error::Unknown);
        if (method == "HEAD") {
            result = client.Head(path, headers);
        } else if (options.keep_body) {
            result = client.Get(path, headers);
        } else {
            result = client.Get(
                path, headers, [](const httplib::Response &) { return true; },
                [](const char *, size_t) { return true; });
        }

        if (!result) {
            switch (result.error()) {
            case httplib::Error::ConnectionTimeout:
            case httplib::Error::Read:
            case httplib::Error::Write:
                out.transport = Transport::timeout;
                break;
            default:
                out.transport = Transport::connection_error;
                break;
            }
            out.error = httplib::to_string(result.error());
            return out;
        }
        out.transport = Transport::ok;
        out.status = result->status;
        for (const auto &[k, v] : result->headers)
            out.headers.emplace(text::lower_ascii(k), v);
        if (options.keep_body)
            out.body = result->body;
        return out;
    }
};

} // namespace

std::unique_ptr<HttpClient> make_http_client() { return std::make_unique<HttplibClient>(); }

} // namespace odaudit::net
