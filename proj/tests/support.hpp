// Shared helpers for the test binaries: fixture paths, temp dirs, graph
// construction shortcuts, and instrumented local HTTP servers.
#pragma once

#include "odaudit/model.hpp"
#include "odaudit/rdf.hpp"

#include <httplib.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <thread>

namespace support {

namespace fs = std::filesystem;
using namespace odaudit;

inline fs::path fixture_path(const std::string &name) {
    return fs::path(ODAUDIT_FIXTURE_DIR) / name;
}

inline std::string read_file(const fs::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot read " + path.string());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

inline void write_file(const fs::path &path, std::string_view content) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

class TempDir {
public:
    TempDir() {
        static std::atomic<unsigned> counter{0};
        std::random_device rd;
        path_ = fs::temp_directory_path() /
                ("odaudit_test_" + std::to_string(rd()) + "_" +
                 std::to_string(counter.fetch_add(1)));
        fs::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    const fs::path &path() const { return path_; }
    fs::path operator/(const std::string &name) const { return path_ / name; }

private:
    fs::path path_;
};

inline rdf::Term iri(std::string v) { return rdf::Term::iri(std::move(v)); }
inline rdf::Term blank(std::string v) { return rdf::Term::blank(std::move(v)); }
inline rdf::Term lit(std::string v, std::string datatype = {}, std::string lang = {}) {
    return rdf::Term::literal(std::move(v), std::move(datatype), std::move(lang));
}

inline void add(rdf::Graph &g, rdf::Term s, std::string p, rdf::Term o) {
    g.push_back({std::move(s), iri(std::move(p)), std::move(o)});
}

// httplib server on an ephemeral localhost port, with request counting and a
// high-water mark of concurrent in-flight requests per run.
class FixtureServer {
public:
    FixtureServer() {
        server_.set_pre_routing_handler([this](const httplib::Request &, httplib::Response &) {
            int now = ++in_flight_;
            int seen = max_in_flight_.load();
            while (now > seen && !max_in_flight_.compare_exchange_weak(seen, now)) {
            }
            ++total_requests_;
            return httplib::Server::HandlerResponse::Unhandled;
        });
        server_.set_post_routing_handler(
            [this](const httplib::Request &, httplib::Response &) { --in_flight_; });
    }

    ~FixtureServer() { stop(); }

    httplib::Server &raw() { return server_; }

    void start() {
        port_ = server_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }

    void stop() {
        if (thread_.joinable()) {
            server_.stop();
            thread_.join();
        }
    }

    int port() const { return port_; }
    std::string base_url() const { return "http://127.0.0.1:" + std::to_string(port_); }
    std::string url(const std::string &path) const { return base_url() + path; }

    int total_requests() const { return total_requests_.load(); }
    int max_in_flight() const { return max_in_flight_.load(); }
    void reset_counters() {
        total_requests_ = 0;
        max_in_flight_ = 0;
    }

private:
    httplib::Server server_;
    std::thread thread_;
    int port_ = 0;
    std::atomic<int> total_requests_{0};
    std::atomic<int> in_flight_{0};
    std::atomic<int> max_in_flight_{0};
};

} // namespace support
