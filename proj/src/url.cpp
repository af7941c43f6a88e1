#include "odaudit/url.hpp"

#include "odaudit/text.hpp"

#include <cctype>

namespace odaudit::url {

namespace {

bool is_scheme_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }

bool is_scheme_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '+' || c == '-' || c == '.';
}

bool digits_only(std::string_view s) {
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
    return true;
}

bool split_authority(std::string_view authority, Url &out) {
    out.has_authority = true;
    auto at = authority.rfind('@');
    if (at != std::string_view::npos) {
        out.userinfo = std::string(authority.substr(0, at));
        authority.remove_prefix(at + 1);
    }
    if (!authority.empty() && authority.front() == '[') {
        auto close = authority.find(']');
        if (close == std::string_view::npos)
            return false;
        out.host = text::lower_ascii(authority.substr(0, close + 1));
        authority.remove_prefix(close + 1);
        if (authority.empty())
            return true;
        if (authority.front() != ':' || !digits_only(authority.substr(1)))
            return false;
        out.port = std::string(authority.substr(1));
        return true;
    }
    auto colon = authority.rfind(':');
    if (colon != std::string_view::npos) {
        if (!digits_only(authority.substr(colon + 1)))
            return false;
        out.port = std::string(authority.substr(colon + 1));
        authority = authority.substr(0, colon);
        if (authority.find(':') != std::string_view::npos)
            return false;
    }
    out.host = text::lower_ascii(authority);
    return true;
}

} // namespace

std::optional<Url> parse(std::string_view input) {
    for (char c : input) {
        unsigned char u = static_cast<unsigned char>(c);
        if (u < 0x20 || c == ' ' || c == '<' || c == '>' || c == '"')
            return std::nullopt;
    }

    Url out;
    std::string_view rest = input;

    auto hash = rest.find('#');
    if (hash != std::string_view::npos) {
        out.fragment = std::string(rest.substr(hash + 1));
        out.has_fragment = true;
        rest = rest.substr(0, hash);
    }
    auto question = rest.find('?');
    if (question != std::string_view::npos) {
        out.query = std::string(rest.substr(question + 1));
        out.has_query = true;
        rest = rest.substr(0, question);
    }

    auto colon = rest.find(':');
    if (colon != std::string_view::npos && colon > 0 && is_scheme_start(rest[0])) {
        bool valid = true;
        for (char c : rest.substr(0, colon))
            if (!is_scheme_char(c))
                valid = false;
        if (valid) {
            out.scheme = text::lower_ascii(rest.substr(0, colon));
            rest.remove_prefix(colon + 1);
        }
    }
    if (out.scheme.empty() && rest.rfind("//", 0) != 0) {
        // A colon in the first segment of a scheme-less reference means the
        // intended scheme failed to parse.
        auto slash = rest.find('/');
        auto seg_colon = rest.substr(0, slash).find(':');
        if (seg_colon != std::string_view::npos)
            return std::nullopt;
    }

    if (rest.size() >= 2 && rest[0] == '/' && rest[1] == '/') {
        rest.remove_prefix(2);
        auto path_start = rest.find_first_of('/');
        std::string_view authority = rest.substr(0, path_start);
        if (authority.find_first_of("\\^`{}|") != std::string_view::npos)
            return std::nullopt;
        if (!split_authority(authority, out))
            return std::nullopt;
        if (out.has_authority && out.host.empty() && !out.scheme.empty())
            return std::nullopt;
        rest = path_start == std::string_view::npos ? std::string_view{} : rest.substr(path_start);
    }
    out.path = std::string(rest);
    if (!out.scheme.empty() && out.scheme != "http" && out.scheme != "https" && out.has_authority &&
        out.host.empty())
        return std::nullopt;
    return out;
}

std::string remove_dot_segments(std::string_view path) {
    std::string output;
    std::string input(path);
    while (!input.empty()) {
        if (input.rfind("../", 0) == 0) {
            input.erase(0, 3);
        } else if (input.rfind("./", 0) == 0) {
            input.erase(0, 2);
        } else if (input.rfind("/./", 0) == 0) {
            input.erase(0, 2);
        } else if (input == "/.") {
            input = "/";
        } else if (input.rfind("/../", 0) == 0) {
            input.erase(0, 3);
            auto slash = output.rfind('/');
            output.erase(slash == std::string::npos ? 0 : slash);
        } else if (input == "/..") {
            input = "/";
            auto slash = output.rfind('/');
            output.erase(slash == std::string::npos ? 0 : slash);
        } else if (input == "." || input == "..") {
            input.clear();
        } else {
            std::size_t start = input.front() == '/' ? 1 : 0;
            auto slash = input.find('/', start);
            output += input.substr(0, slash == std::string::npos ? input.size() : slash);
            input.erase(0, slash == std::string::npos ? input.size() : slash);
        }
    }
    return output;
}

std::optional<Url> resolve(const Url &base, std::string_view reference) {
    auto ref = parse(reference);
    if (!ref)
        return std::nullopt;
    if (!ref->scheme.empty()) {
        ref->path = remove_dot_segments(ref->path);
        return ref;
    }
    Url target;
    target.scheme = base.scheme;
    if (ref->has_authority) {
        target.has_authority = true;
        target.userinfo = ref->userinfo;
        target.host = ref->host;
        target.port = ref->port;
        target.path = remove_dot_segments(ref->path);
        target.query = ref->query;
        target.has_query = ref->has_query;
    } else {
        target.has_authority = base.has_authority;
        target.userinfo = base.userinfo;
        target.host = base.host;
        target.port = base.port;
        if (ref->path.empty()) {
            target.path = base.path;
            target.query = ref->has_query ? ref->query : base.query;
            target.has_query = ref->has_query || base.has_query;
        } else {
            if (ref->path.front() == '/') {
                target.path = remove_dot_segments(ref->path);
            } else if (base.has_authority && base.path.empty()) {
                target.path = remove_dot_segments("/" + ref->path);
            } else {
                auto slash = base.path.rfind('/');
                std::string merged = slash == std::string::npos
                                         ? ref->path
                                         : base.path.substr(0, slash + 1) + ref->path;
                target.path = remove_dot_segments(merged);
            }
            target.query = ref->query;
            target.has_query = ref->has_query;
        }
    }
    target.fragment = ref->fragment;
    target.has_fragment = ref->has_fragment;
    return target;
}

std::string Url::str() const {
    std::string out;
    if (!scheme.empty()) {
        out += scheme;
        out.push_back(':');
    }
    if (has_authority) {
        out += "//";
        if (!userinfo.empty()) {
            out += userinfo;
            out.push_back('@');
        }
        out += host;
        if (!port.empty()) {
            out.push_back(':');
            out += port;
        }
    }
    out += path;
    if (has_query) {
        out.push_back('?');
        out += query;
    }
    if (has_fragment) {
        out.push_back('#');
        out += fragment;
    }
    return out;
}

std::string Url::host_key() const {
    std::string effective_port = port;
    if (effective_port.empty())
        effective_port = scheme == "https" ? "443" : "80";
    if ((scheme == "http" && effective_port == "80") ||
        (scheme == "https" && effective_port == "443"))
        return host;
    return host + ":" + effective_port;
}

std::string percent_encode_spaces(std::string_view iri) {
    std::string out;
    out.reserve(iri.size());
    for (char c : iri) {
        if (c == ' ')
            out += "%20";
        else
            out.push_back(c);
    }
    return out;
}

} // namespace odaudit::url
