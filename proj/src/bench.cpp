#include "tcpurity/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <random>
#include <thread>

#include "httplib.h"
#include "json.hpp"

namespace tcpurity::bench {

using json = nlohmann::ordered_json;

std::string_view penalty_field_name(PenaltyField f) {
    return f == PenaltyField::RepetitionPenalty ? "repetition_penalty"
                                                : "frequency_penalty";
}

std::string prompt_to_message(const corpus::PromptRecord& prompt) {
    if (prompt.input.empty()) return prompt.instruction;
    return prompt.instruction + "\n\n" + prompt.input;
}

namespace {

std::string utc_now_iso8601() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string request_body(const corpus::PromptRecord& prompt, const EndpointSpec& ep,
                         const corpus::DecodingConfig& decoding) {
    json body{{"model", ep.model_name},
              {"messages",
               json::array({json{{"role", "user"}, {"content", prompt_to_message(prompt)}}})},
              {"temperature", decoding.temperature},
              {"top_p", decoding.top_p},
              {"max_tokens", decoding.max_new_tokens}};
    body[std::string(penalty_field_name(ep.penalty_field))] = decoding.repetition_penalty;
    return body.dump();
}

bool retryable_status(int status) {
    return status == 429 || (status >= 500 && status < 600);
}

int backoff_with_jitter_ms(const EndpointSpec& ep, int attempt, std::mt19937& rng) {
    const double cap = static_cast<double>(ep.max_backoff_ms);
    const double exp = static_cast<double>(ep.initial_backoff_ms) * std::pow(2.0, attempt);
    std::uniform_real_distribution<double> jitter(0.0, std::min(cap, exp));
    return static_cast<int>(jitter(rng));
}

struct RequestOutcome {
    std::string text;
    std::string error;
    int attempts = 0;
};

RequestOutcome issue_with_retries(httplib::Client& client,
                                  const corpus::PromptRecord& prompt,
                                  const EndpointSpec& ep,
                                  const corpus::DecodingConfig& decoding,
                                  std::mt19937& rng) {
    RequestOutcome out;
    const std::string body = request_body(prompt, ep, decoding);
    for (int attempt = 0; attempt <= ep.max_retries; ++attempt) {
        ++out.attempts;
        auto res = client.Post("/v1/chat/completions", body, "application/json");
        if (!res) {
            out.error = "transport error: " + httplib::to_string(res.error());
        } else if (res->status == 200) {
            json reply = json::parse(res->body, nullptr, false);
            if (reply.is_discarded()) {
                out.error = "unparseable response body";
                return out;  // malformed success is not worth retrying
            }
            try {
                out.text = reply.at("choices").at(0).at("message").at("content")
                               .get<std::string>();
                out.error.clear();
                return out;
            } catch (const json::exception& e) {
                out.error = std::string("unexpected response shape: ") + e.what();
                return out;
            }
        } else if (retryable_status(res->status)) {
            out.error = "HTTP " + std::to_string(res->status);
        } else {
            out.error = "HTTP " + std::to_string(res->status) + " (not retried)";
            return out;
        }
        if (attempt < ep.max_retries) {
            std::this_thread::sleep_for(
                std::chrono::milliseconds(backoff_with_jitter_ms(ep, attempt, rng)));
        }
    }
    return out;
}

std::unique_ptr<httplib::Client> make_client(const EndpointSpec& ep) {
    auto client = std::make_unique<httplib::Client>(ep.base_url);
    client->set_connection_timeout(ep.timeout_s, 0);
    client->set_read_timeout(ep.timeout_s, 0);
    if (!ep.api_key.empty()) {
        client->set_bearer_token_auth(ep.api_key);
    }
    return client;
}

}  // namespace

BenchResult run_benchmark(const std::vector<corpus::PromptRecord>& prompts,
                          const EndpointSpec& endpoint,
                          const corpus::DecodingConfig& decoding,
                          const std::string& run_id) {
    if (endpoint.max_in_flight < 1) {
        throw BenchError("max_in_flight must be >= 1");
    }

    {
        auto probe = make_client(endpoint);
        auto res = probe->Get("/v1/models");
        // Any HTTP answer proves reachability; only a transport failure aborts.
        if (!res) {
            throw BenchError("endpoint probe failed for " + endpoint.base_url + ": " +
                             httplib::to_string(res.error()));
        }
    }

    BenchResult result;
    result.records.resize(prompts.size());
    result.attempts.resize(prompts.size());

    std::atomic<std::size_t> next{0};
    const std::size_t workers =
        std::min<std::size_t>(static_cast<std::size_t>(endpoint.max_in_flight),
                              std::max<std::size_t>(prompts.size(), 1));

    auto worker = [&]() {
        auto client = make_client(endpoint);
        std::mt19937 rng(std::random_device{}());
        for (std::size_t i = next.fetch_add(1); i < prompts.size();
             i = next.fetch_add(1)) {
            const corpus::PromptRecord& prompt = prompts[i];
            RequestOutcome outcome =
                issue_with_retries(*client, prompt, endpoint, decoding, rng);

            corpus::GenerationRecord rec;
            rec.prompt_id = prompt.id;
            rec.model_id = endpoint.model_name;
            rec.run_id = run_id;
            rec.text = outcome.text;
            rec.decoding = decoding;
            rec.timestamp = utc_now_iso8601();
            rec.error = outcome.error;
            result.records[i] = std::move(rec);
            result.attempts[i] = {prompt.id, outcome.attempts, outcome.error};
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    return result;
}

}  // namespace tcpurity::bench
