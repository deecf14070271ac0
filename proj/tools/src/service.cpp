#include "service.hpp"

#include <charconv>
#include <cstdio>
#include <unordered_set>

#include "json.hpp"
#include "vitalscan/error.hpp"
#include "vitalscan/identity.hpp"
#include "vitalscan/report.hpp"

namespace vitalscan {
namespace {

// Raised by query-parameter parsing; always maps to 400.
struct QueryError {
    std::string name;
};

// Errors the trace parser raises describe a broken request body, not a
// domain condition, so they return 400 rather than 422.
bool is_parse_stage(const std::string& name) {
    static const std::unordered_set<std::string> kParseStage = {
        "MalformedRow", "NonMonotoneTimestamps", "NonPositiveChannel", "EmptyTrace"};
    return kParseStage.contains(name);
}

double parse_double_param(const std::string& value) {
    double out = 0.0;
    const char* end = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc{} || ptr != end) throw QueryError{"MalformedQuery"};
    return out;
}

TraceOptions options_for_request(const TraceOptions& base, const httplib::Request& req) {
    TraceOptions opts = base;
    if (req.has_param("fs")) {
        const double fs = parse_double_param(req.get_param_value("fs"));
        if (!(fs > 0.0)) throw QueryError{"MalformedQuery"};
        opts.fs_target = fs;
    }
    if (req.has_param("window")) {
        const double window = parse_double_param(req.get_param_value("window"));
        if (!(window > 0.0)) throw QueryError{"MalformedQuery"};
        opts.pos.window_seconds = window;
    }
    if (req.has_param("band")) {
        const std::string band = req.get_param_value("band");
        const auto colon = band.find(':');
        if (colon == std::string::npos) throw QueryError{"MalformedQuery"};
        const double lo = parse_double_param(band.substr(0, colon));
        const double hi = parse_double_param(band.substr(colon + 1));
        if (!(lo > 0.0 && lo < hi)) throw QueryError{"MalformedQuery"};
        opts.pos.band_lo_hz = lo;
        opts.pos.band_hi_hz = hi;
    }
    return opts;
}

void reply_error(httplib::Response& res, int status, const std::string& name) {
    res.status = status;
    res.set_content(canonical_error_json(name), "application/json");
}

std::vector<double> probe_from_body(const std::string& body) {
    nlohmann::json doc = nlohmann::json::parse(body, nullptr, false);
    if (doc.is_object() && doc.contains("probe")) doc = doc["probe"];
    if (!doc.is_array() || doc.empty()) throw QueryError{"MalformedBody"};
    std::vector<double> probe;
    probe.reserve(doc.size());
    for (const auto& x : doc) {
        if (!x.is_number()) throw QueryError{"MalformedBody"};
        probe.push_back(x.get<double>());
    }
    return probe;
}

}  // namespace

std::unique_ptr<httplib::Server> make_service(const ServiceConfig& config) {
    auto server = std::make_unique<httplib::Server>();

    std::shared_ptr<const EmbeddingGallery> gallery;
    if (config.gallery_path)
        gallery = std::make_shared<const EmbeddingGallery>(load_gallery(*config.gallery_path));

    server->Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
        res.set_content("ok", "text/plain");
    });

    const TraceOptions base = config.trace;
    server->Post("/v1/vitals", [base](const httplib::Request& req, httplib::Response& res) {
        try {
            const TraceOptions opts = options_for_request(base, req);
            const VitalsReport report = vitals_from_document(req.body, opts);
            res.set_content(canonical_report_json(report), "application/json");
        } catch (const QueryError& e) {
            reply_error(res, 400, e.name);
        } catch (const Error& e) {
            reply_error(res, is_parse_stage(e.name()) ? 400 : 422, e.name());
        } catch (const std::exception&) {
            reply_error(res, 500, "Internal");
        }
    });

    server->Post("/v1/identify",
                 [gallery](const httplib::Request& req, httplib::Response& res) {
                     try {
                         const std::vector<double> probe = probe_from_body(req.body);
                         if (!gallery) throw Error("EmptyGallery", "no gallery loaded");
                         const IdentityMatch match = gallery->identify(probe);
                         res.set_content(canonical_match_json(match), "application/json");
                     } catch (const QueryError& e) {
                         reply_error(res, 400, e.name);
                     } catch (const Error& e) {
                         reply_error(res, 422, e.name());
                     } catch (const std::exception&) {
                         reply_error(res, 500, "Internal");
                     }
                 });

    return server;
}

int serve_batch(const std::string& host, int port, const ServiceConfig& config) {
    auto server = make_service(config);
    if (!server->bind_to_port(host, port)) {
        std::fprintf(stderr, "cannot bind %s:%d\n", host.c_str(), port);
        return 2;
    }
    std::fprintf(stderr, "listening on %s:%d\n", host.c_str(), port);
    return server->listen_after_bind() ? 0 : 2;
}

}  // namespace vitalscan
