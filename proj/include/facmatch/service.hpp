#pragma once

#include <memory>
#include <string>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "facmatch/resolver_index.hpp"
#include "facmatch/util.hpp"

namespace facmatch {

namespace detail {

inline void send_json(httplib::Response& res, int status, const nlohmann::json& body) {
    res.status = status;
    res.set_content(body.dump(2) + "\n", "application/json");
}

inline void send_error(httplib::Response& res, int status, const std::string& error,
                       const std::string& detail) {
    send_json(res, status, {{"error", error}, {"detail", detail}});
}

}  // namespace detail

/// Wire the read-only resolver endpoints onto a server. The index must
/// outlive the server; it is immutable, so handlers can share it freely.
inline void register_resolver_routes(httplib::Server& server,
                                     std::shared_ptr<const ResolverIndex> index) {
    server.Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
        res.set_content("ok\n", "text/plain");
    });

    server.Get("/resolve", [index](const httplib::Request& req, httplib::Response& res) {
        if (!req.has_param("q")) {
            detail::send_error(res, 400, "missing_parameter", "query parameter 'q' is required");
            return;
        }
        size_t limit = 10;
        if (req.has_param("limit")) {
            auto parsed = parse_long(req.get_param_value("limit"));
            if (!parsed || *parsed < 1) {
                detail::send_error(res, 400, "bad_parameter",
                                   "'limit' must be a positive integer");
                return;
            }
            limit = static_cast<size_t>(*parsed);
        }
        nlohmann::json body = nlohmann::json::array();
        for (const auto& hit : index->resolve(req.get_param_value("q"), limit))
            body.push_back({{"slug", hit.slug}, {"label", hit.label}, {"score", hit.score}});
        detail::send_json(res, 200, body);
    });

    server.Get("/aliases", [index](const httplib::Request& req, httplib::Response& res) {
        if (!req.has_param("slug")) {
            detail::send_error(res, 400, "missing_parameter", "query parameter 'slug' is required");
            return;
        }
        std::string slug = req.get_param_value("slug");
        bool narrower = false;
        bool expand = false;
        if (req.has_param("expand")) {
            std::string mode = req.get_param_value("expand");
            if (mode == "narrower") {
                narrower = true;
                expand = true;
            } else if (mode == "broader") {
                expand = true;
            } else {
                detail::send_error(res, 400, "bad_parameter",
                                   "'expand' must be 'narrower' or 'broader'");
                return;
            }
        }
        const ResolverEntry* entry = index->find(slug);
        if (!entry) {
            detail::send_error(res, 404, "not_found", "unknown slug '" + slug + "'");
            return;
        }
        nlohmann::json expanded = nlohmann::json::array();
        if (expand) {
            for (const ResolverEntry* e : index->expand(slug, narrower))
                expanded.push_back(
                    {{"slug", e->slug}, {"preferred", e->preferred}, {"aliases", e->aliases}});
        }
        detail::send_json(res, 200,
                          {{"slug", entry->slug},
                           {"preferred", entry->preferred},
                           {"aliases", entry->aliases},
                           {"expanded", expanded}});
    });
}

}  // namespace facmatch
