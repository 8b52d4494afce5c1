#pragma once

// Remote encoder backend. Kept out of embedding.hpp so that only users of
// the HTTP path pay for the httplib include.

#include <string>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "regulens/embedding.hpp"

namespace regulens {

// POSTs {"texts":[...]} to <base_url>/embed in batches of at most
// `batch_size`, expecting {"vectors":[[...], ...]} back. Any non-2xx status,
// count mismatch or ragged dimensionality is a backend error.
struct HttpBackend final : EmbedBackend {
    std::string base_url;
    std::size_t batch_size = 64;

    explicit HttpBackend(std::string url) : base_url(std::move(url)) {}

    std::vector<std::vector<float>> embed(
        const std::vector<std::string>&,
        const std::vector<std::vector<std::string>>& token_lists) override {
        std::vector<std::vector<float>> out;
        out.reserve(token_lists.size());
        httplib::Client client(base_url);
        client.set_read_timeout(60, 0);

        for (std::size_t start = 0; start < token_lists.size();
             start += batch_size) {
            std::size_t end = std::min(start + batch_size, token_lists.size());
            nlohmann::json body;
            body["texts"] = nlohmann::json::array();
            for (std::size_t i = start; i < end; ++i) {
                std::string text;
                for (const auto& tok : token_lists[i]) {
                    if (!text.empty()) text += ' ';
                    text += tok;
                }
                body["texts"].push_back(text);
            }
            auto res = client.Post("/embed", body.dump(), "application/json");
            if (!res)
                throw std::runtime_error("embed backend unreachable: " +
                                         base_url);
            if (res->status < 200 || res->status >= 300)
                throw std::runtime_error("embed backend HTTP " +
                                         std::to_string(res->status));
            nlohmann::json reply;
            try {
                reply = nlohmann::json::parse(res->body);
            } catch (const nlohmann::json::exception&) {
                throw std::runtime_error("embed backend returned invalid JSON");
            }
            if (!reply.contains("vectors") || !reply["vectors"].is_array() ||
                reply["vectors"].size() != end - start)
                throw std::runtime_error(
                    "embed backend returned wrong vector count");
            for (const auto& vec : reply["vectors"]) {
                if (!vec.is_array())
                    throw std::runtime_error("embed backend returned non-array");
                std::vector<float> v;
                v.reserve(vec.size());
                for (const auto& x : vec) v.push_back(x.get<float>());
                if (!out.empty() && v.size() != out[0].size())
                    throw std::runtime_error(
                        "embed backend returned ragged dimensions");
                out.push_back(std::move(v));
            }
        }
        return out;
    }
};

} // namespace regulens
