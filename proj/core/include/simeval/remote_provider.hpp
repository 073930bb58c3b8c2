#pragma once

#include <cstddef>
#include <memory>
#include <string>

#include "simeval/embed_metrics.hpp"

namespace simeval {

struct RemoteProviderOptions {
    std::size_t max_retries = 3;   // additional attempts after the first
    std::size_t retry_delay_ms = 200;
    std::size_t timeout_s = 30;
};

// Talks to an embedding server over HTTP: POST <endpoint>/embed with
// {"model_id", "texts"}; 5xx and connection failures are retried, 4xx is
// fatal. Responses are cached per text for the life of the provider.
std::unique_ptr<EmbeddingProvider> make_remote_provider(const std::string& endpoint_url,
                                                        const std::string& model_id,
                                                        const RemoteProviderOptions& options = {});

} // namespace simeval
