#pragma once

#include <memory>
#include <optional>
#include <string>

#include "httplib.h"
#include "vitalscan/pipeline.hpp"

namespace vitalscan {

struct ServiceConfig {
    std::optional<std::string> gallery_path;
    TraceOptions trace;  // startup defaults; query params override per request
};

// Routes: POST /v1/vitals (body = trace CSV), POST /v1/identify (body = probe
// JSON), GET /healthz. Handlers share only immutable state, so the server's
// worker pool may run them concurrently.
std::unique_ptr<httplib::Server> make_service(const ServiceConfig& config);

// Binds and serves until the process dies; returns 2 on bind failure.
int serve_batch(const std::string& host, int port, const ServiceConfig& config);

}  // namespace vitalscan
