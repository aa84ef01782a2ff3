#pragma once

#include <string>

#include "gaf/search.hpp"

namespace gaf {

// Remote engine speaking a one-endpoint protocol:
//   GET <base_url>?q=<url-encoded query>&n=<limit>
// answered by a JSON array of {"location", "title", "snippet"} objects in
// rank order. Transport failures and non-200 statuses are retried with
// exponential backoff; exhausting the retries raises a retryable EngineError.
// A 200 with an unparseable body is a non-retryable EngineError.
class HttpEngine : public Engine {
public:
    explicit HttpEngine(std::string base_url, int max_attempts = 3, int initial_backoff_ms = 500);

    std::string name() const override { return "http"; }
    std::vector<SearchHit> fetch(const std::string& query_text, int limit) override;

private:
    std::string base_url_;
    int max_attempts_;
    int initial_backoff_ms_;
};

std::string url_encode(const std::string& text);

}  // namespace gaf
