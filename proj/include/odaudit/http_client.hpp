// Thin HTTP abstraction so harvesting and probing can run against fixture
// servers in tests and real portals in production.
#pragma once

#include "odaudit/url.hpp"

#include <chrono>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace odaudit::net {

enum class Transport { ok, timeout, connection_error, invalid_url };

struct FetchResult {
    Transport transport = Transport::connection_error;
    int status = 0;
    std::map<std::string, std::string> headers; // keys lowercased
    std::string body;
    std::string error;

    bool ok() const { return transport == Transport::ok; }
    std::string header(const std::string &key) const;
};

struct RequestOptions {
    std::chrono::milliseconds timeout{30000};
    bool keep_body = true;
    std::vector<std::pair<std::string, std::string>> headers;
    bool follow_redirects = false;
};

// Implementations must be safe to call from multiple threads.
class HttpClient {
public:
    virtual ~HttpClient() = default;
    virtual FetchResult request(const std::string &method, const std::string &url,
                                const RequestOptions &options) = 0;
};

// Backed by cpp-httplib; honors HTTP_PROXY/HTTPS_PROXY/http_proxy/https_proxy.
std::unique_ptr<HttpClient> make_http_client();

} // namespace odaudit::net
