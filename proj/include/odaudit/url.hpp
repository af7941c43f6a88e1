// URL parsing and reference resolution used for access URLs and harvest endpoints.
#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace odaudit::url {

struct Url {
    std::string scheme;   // lowercased, empty if relative reference
    std::string userinfo; // without trailing '@'
    std::string host;     // lowercased
    std::string port;     // digits only, empty when unspecified
    std::string path;
    std::string query;    // without '?'
    std::string fragment; // without '#'
    bool has_authority = false;
    bool has_query = false;
    bool has_fragment = false;

    std::string str() const;
    // "host:port" with the default port for http/https elided.
    std::string host_key() const;
    bool is_http() const { return scheme == "http" || scheme == "https"; }
};

// Splits a URI reference into components. Returns nullopt when the input has
// an invalid scheme or authority that cannot be used for a request.
std::optional<Url> parse(std::string_view input);

// RFC 3986 section 5.2 resolution of a reference against an absolute base.
std::optional<Url> resolve(const Url &base, std::string_view reference);

// Dot-segment removal, exposed for reuse in path normalization.
std::string remove_dot_segments(std::string_view path);

std::string percent_encode_spaces(std::string_view iri);

} // namespace odaudit::url
