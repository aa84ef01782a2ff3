#include "gaf/http_engine.hpp"

#include <chrono>
#include <thread>

#include <httplib.h>
#include <json.hpp>

namespace gaf {
namespace {

// Splits "http://host:port/path" into the client root and the path part.
struct SplitUrl {
    std::string origin;  // scheme://host[:port]
    std::string path;    // /path or /
};

SplitUrl SplitBaseUrl(const std::string& base_url) {
    const auto scheme_end = base_url.find("://");
    if (scheme_end == std::string::npos) {
        throw EngineError("http engine: base url without scheme: " + base_url, false);
    }
    const auto path_start = base_url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) {
        return {base_url, "/"};
    }
    return {base_url.substr(0, path_start), base_url.substr(path_start)};
}

}  // namespace

std::string url_encode(const std::string& text) {
    static const char* hex = "0123456789ABCDEF";
    std::string encoded;
    encoded.reserve(text.size());
    for (const char c : text) {
        const unsigned char byte = static_cast<unsigned char>(c);
        const bool unreserved = (byte >= 'a' && byte <= 'z') || (byte >= 'A' && byte <= 'Z') ||
                                (byte >= '0' && byte <= '9') || byte == '-' || byte == '_' ||
                                byte == '.' || byte == '~';
        if (unreserved) {
            encoded.push_back(c);
        } else {
            encoded.push_back('%');
            encoded.push_back(hex[byte >> 4]);
            encoded.push_back(hex[byte & 0x0F]);
        }
    }
    return encoded;
}

HttpEngine::HttpEngine(std::string base_url, int max_attempts, int initial_backoff_ms)
    : base_url_(std::move(base_url)),
      max_attempts_(max_attempts),
      initial_backoff_ms_(initial_backoff_ms) {}

std::vector<SearchHit> HttpEngine::fetch(const std::string& query_text, int limit) {
    const SplitUrl url = SplitBaseUrl(base_url_);
    const std::string target =
        url.path + "?q=" + url_encode(query_text) + "&n=" + std::to_string(limit);

    httplib::Client client(url.origin);
    client.set_connection_timeout(5, 0);
    client.set_read_timeout(10, 0);

    std::string body;
    bool got_response = false;
    int backoff_ms = initial_backoff_ms_;
    std::string last_problem;
    for (int attempt = 1; attempt <= max_attempts_; ++attempt) {
        if (attempt > 1) {
            std::this_thread::sleep_for(std::chrono::milliseconds(backoff_ms));
            backoff_ms *= 2;
        }
        httplib::Result result = client.Get(target);
        if (!result) {
            last_problem = "transport failure (" + httplib::to_string(result.error()) + ")";
            continue;
        }
        if (result->status != 200) {
            last_problem = "status " + std::to_string(result->status);
            continue;
        }
        body = result->body;
        got_response = true;
        break;
    }
    if (!got_response) {
        throw EngineError("http engine: " + last_problem + " after " +
                              std::to_string(max_attempts_) + " attempts for query '" + query_text +
                              "'",
                          true, query_text);
    }

    nlohmann::json parsed;
    try {
        parsed = nlohmann::json::parse(body);
    } catch (const nlohmann::json::exception& error) {
        throw EngineError("http engine: malformed response body: " + std::string(error.what()),
                          false, query_text);
    }
    if (!parsed.is_array()) {
        throw EngineError("http engine: response is not a JSON array", false, query_text);
    }

    std::vector<SearchHit> hits;
    hits.reserve(parsed.size());
    for (const nlohmann::json& item : parsed) {
        if (!item.is_object() || !item.contains("location") || !item["location"].is_string() ||
            item["location"].get<std::string>().empty()) {
            throw EngineError("http engine: result item without a usable location", false,
                              query_text);
        }
        SearchHit hit;
        hit.location = item["location"].get<std::string>();
        if (item.contains("title") && item["title"].is_string()) {
            hit.title = item["title"].get<std::string>();
        }
        if (item.contains("snippet") && item["snippet"].is_string()) {
            hit.snippet = item["snippet"].get<std::string>();
        }
        hits.push_back(std::move(hit));
    }
    return hits;
}

}  // namespace gaf
