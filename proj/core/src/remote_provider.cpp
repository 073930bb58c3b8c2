#include "simeval/remote_provider.hpp"

#include <chrono>
#include <thread>
#include <unordered_map>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "simeval/errors.hpp"

namespace simeval {

namespace {

class RemoteProvider final : public EmbeddingProvider {
public:
    RemoteProvider(std::string endpoint, std::string model_id, RemoteProviderOptions options)
        : endpoint_(std::move(endpoint)), model_id_(std::move(model_id)), options_(options) {
        while (!endpoint_.empty() && endpoint_.back() == '/') endpoint_.pop_back();
        client_ = std::make_unique<httplib::Client>(endpoint_);
        client_->set_connection_timeout(static_cast<time_t>(options_.timeout_s), 0);
        client_->set_read_timeout(static_cast<time_t>(options_.timeout_s), 0);
    }

    std::string model_id() const override { return model_id_; }

    TokenEmbeddings embed(const std::string& text) override {
        if (auto it = cache_.find(text); it != cache_.end()) return it->second;
        TokenEmbeddings result = fetch(text);
        cache_.emplace(text, result);
        return result;
    }

private:
    TokenEmbeddings fetch(const std::string& text) {
        nlohmann::ordered_json request;
        request["model_id"] = model_id_;
        request["texts"] = nlohmann::ordered_json::array({text});
        const std::string body = request.dump();

        std::string last_failure = "no attempt made";
        for (std::size_t attempt = 0; attempt <= options_.max_retries; ++attempt) {
            if (attempt > 0 && options_.retry_delay_ms > 0)
                std::this_thread::sleep_for(std::chrono::milliseconds(options_.retry_delay_ms));

            httplib::Result res = client_->Post("/embed", body, "application/json");
            if (!res) {
                last_failure = "connection to " + endpoint_ + " failed (" +
                               httplib::to_string(res.error()) + ")";
                continue;
            }
            if (res->status >= 500) {
                last_failure = "server returned status " + std::to_string(res->status);
                continue;
            }
            if (res->status >= 400)
                throw ProviderError("embedding request rejected with status " +
                                    std::to_string(res->status) + ": " + res->body);
            if (res->status != 200)
                throw ProtocolError("unexpected status " + std::to_string(res->status) +
                                    " from " + endpoint_ + "/embed");
            return parse_response(res->body);
        }
        throw ProviderError("embedding request failed after " +
                            std::to_string(options_.max_retries + 1) + " attempts: " +
                            last_failure);
    }

    TokenEmbeddings parse_response(const std::string& body) const {
        nlohmann::json parsed;
        try {
            parsed = nlohmann::json::parse(body);
        } catch (const nlohmann::json::exception& e) {
            throw ProtocolError(std::string("malformed embedding response: ") + e.what());
        }
        try {
            auto got_model = parsed.at("model_id").get<std::string>();
            if (got_model != model_id_)
                throw ProtocolError("embedding response for model '" + got_model +
                                    "', expected '" + model_id_ + "'");
            const auto& results = parsed.at("results");
            if (!results.is_array() || results.size() != 1)
                throw ProtocolError("expected exactly 1 result, got " +
                                    std::to_string(results.size()));
            TokenEmbeddings out;
            out.tokens = results[0].at("tokens").get<std::vector<std::string>>();
            for (const auto& row : results[0].at("vectors")) {
                std::vector<float> vec;
                vec.reserve(row.size());
                for (const auto& component : row)
                    vec.push_back(static_cast<float>(component.get<double>()));
                out.vectors.push_back(std::move(vec));
            }
            try {
                validate_embeddings(out);
            } catch (const Error& e) {
                throw ProtocolError(std::string("invalid embedding payload: ") + e.what());
            }
            return out;
        } catch (const nlohmann::json::exception& e) {
            throw ProtocolError(std::string("malformed embedding response: ") + e.what());
        }
    }

    std::string endpoint_;
    std::string model_id_;
    RemoteProviderOptions options_;
    std::unique_ptr<httplib::Client> client_;
    std::unordered_map<std::string, TokenEmbeddings> cache_;
};

} // namespace

std::unique_ptr<EmbeddingProvider> make_remote_provider(const std::string& endpoint_url,
                                                        const std::string& model_id,
                                                        const RemoteProviderOptions& options) {
    return std::make_unique<RemoteProvider>(endpoint_url, model_id, options);
}

} // namespace simeval
