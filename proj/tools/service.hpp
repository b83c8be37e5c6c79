#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include <httplib.h>
#include <json.hpp>

#include <tdalign/pipeline.hpp>

namespace tdalign::service {

struct Reply {
    int status = 200;
    std::string body;
};

inline constexpr std::size_t kDefaultMaxPayload = 64u << 20;

namespace detail {

struct Request {
    Transcript reference;
    Transcript hypothesis;
    RunOptions options;
};

inline Request parse_request(std::string_view body) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(body);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("$", std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw ParseError("$", "expected an object");
    for (const char* key : {"reference", "hypothesis"})
        if (!doc.contains(key))
            throw ParseError(std::string("$.") + key, "missing required field");

    Request r;
    r.options = options_from_json(doc.value("options", nlohmann::json()));
    const auto load = [&](const char* key, Role role) {
        try {
            return parse_transcript(doc[key], role, r.options.normalization);
        } catch (const ParseError& e) {
            // Re-root the path under the request field.
            throw ParseError("$." + std::string(key) + e.path().substr(1),
                             std::string(e.what()).substr(e.path().size() + 2));
        } catch (const ValidationError& e) {
            throw ValidationError(std::string(key) + ": " + e.what());
        }
    };
    r.reference = load("reference", Role::reference);
    r.hypothesis = load("hypothesis", Role::hypothesis);
    return r;
}

inline Reply error_reply(int status, const std::string& message) {
    return {status, dump({{"error", message}})};
}

template <typename Body>
Reply guarded(Body&& body) {
    try {
        return {200, body()};
    } catch (const ParseError& e) {
        return {400, dump({{"error", e.what()}, {"path", e.path()}})};
    } catch (const ValidationError& e) {
        return error_reply(400, e.what());
    } catch (const BudgetError& e) {
        return error_reply(422, e.what());
    } catch (const std::exception& e) {
        return error_reply(500, e.what());
    }
}

}  // namespace detail

inline Reply health() { return {200, dump({{"status", "ok"}})}; }

inline Reply align(std::string_view body) {
    return detail::guarded([&] {
        const auto r = detail::parse_request(body);
        return dump(to_json(run_alignment(r.reference, r.hypothesis, r.options).alignment));
    });
}

inline Reply evaluate(std::string_view body) {
    return detail::guarded([&] {
        const auto r = detail::parse_request(body);
        return dump(tdalign::evaluate(r.reference, r.hypothesis, r.options));
    });
}

// Registers the endpoints. Handlers keep no state between requests.
inline void install(httplib::Server& server, std::size_t max_payload = kDefaultMaxPayload) {
    server.set_payload_max_length(max_payload);
    const auto send = [](httplib::Response& res, const Reply& r) {
        res.status = r.status;
        res.set_content(r.body, "application/json");
    };
    server.Get("/health", [send](const httplib::Request&, httplib::Response& res) { send(res, health()); });
    server.Post("/align",
                [send](const httplib::Request& req, httplib::Response& res) { send(res, align(req.body)); });
    server.Post("/evaluate",
                [send](const httplib::Request& req, httplib::Response& res) { send(res, evaluate(req.body)); });
    server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
        if (res.status == 413)
            res.set_content(dump({{"error", "payload too large"}}), "application/json");
    });
}

}  // namespace tdalign::service
