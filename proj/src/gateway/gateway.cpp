#include "interpcast/gateway/gateway.hpp"

#include <array>
#include <thread>

namespace interpcast::gateway {

bool known_role_tag(std::string_view tag) {
    static constexpr std::array<std::string_view, 11> tags = {
        "TA", "PR1", "CA1", "CA2", "CA3", "ED1", "PR2", "NR", "PR3", "ED2", "PR4"};
    for (auto t : tags) {
        if (t == tag) return true;
    }
    return false;
}

namespace {

std::optional<std::string> balanced_from(std::string_view text, std::size_t start) {
    int depth = 0;
    bool in_string = false;
    bool escaped = false;
    for (std::size_t i = start; i < text.size(); ++i) {
        char c = text[i];
        if (in_string) {
            if (escaped) {
                escaped = false;
            } else if (c == '\\') {
                escaped = true;
            } else if (c == '"') {
                in_string = false;
            }
            continue;
        }
        if (c == '"') {
            in_string = true;
        } else if (c == '{') {
            ++depth;
        } else if (c == '}') {
            --depth;
            if (depth == 0) {
                return std::string(text.substr(start, i - start + 1));
            }
        }
    }
    return std::nullopt;
}

} // namespace

std::optional<std::string> extract_json_object(std::string_view text) {
    std::optional<std::string> first_balanced;
    for (std::size_t i = text.find('{'); i != std::string_view::npos; i = text.find('{', i + 1)) {
        auto candidate = balanced_from(text, i);
        if (!candidate) continue;
        if (!first_balanced) first_balanced = candidate;
        if (!ijson::parse(*candidate, nullptr, false).is_discarded()) return candidate;
    }
    return first_balanced;
}

Gateway::Gateway(Provider& provider, PipelineTrace& trace, const domain::PipelineConfig& cfg)
    : provider_(provider), trace_(trace), cfg_(cfg),
      sleep_([](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); }) {}

void Gateway::set_sleeper(std::function<void(std::chrono::milliseconds)> sleeper) {
    sleep_ = std::move(sleeper);
}

ijson Gateway::build_body(const ChatRequest& req) const {
    ijson body = ijson::object();
    body["model"] = cfg_.model;
    body["messages"] = ijson::array();
    body["messages"].push_back({{"role", "system"}, {"content", req.system_prompt}});
    body["messages"].push_back({{"role", "user"}, {"content", req.user_prompt}});
    body["temperature"] = req.temperature;
    body["max_tokens"] = req.max_tokens;
    return body;
}

void Gateway::record(const TraceContext& ctx, const std::string& role,
                     const std::string& request_body, const std::string& response_text,
                     int attempt) {
    TraceRecord r;
    r.stage = ctx.stage;
    r.role = role;
    r.topic_index = ctx.topic_index;
    r.round = ctx.round;
    r.request_sha256 = sha256_hex(request_body);
    r.response_sha256 = sha256_hex(response_text);
    r.attempts = attempt;
    trace_.append(std::move(r));
}

ChatResponse Gateway::complete(const ChatRequest& req, const TraceContext& ctx, int attempt) {
    if (req.system_prompt.empty()) throw PreconditionError("system_prompt must be non-empty");
    if (req.user_prompt.empty()) throw PreconditionError("user_prompt must be non-empty");
    if (!known_role_tag(req.role_tag)) {
        throw PreconditionError("unknown role_tag: " + req.role_tag);
    }

    const ijson body = build_body(req);
    const std::string body_text = body.dump();

    const int transport_tries = 1 + cfg_.parse_retries;
    WireResult wire;
    auto started = std::chrono::steady_clock::now();
    for (int t = 1;; ++t) {
        try {
            wire = provider_.send(body, req.role_tag);
            break;
        } catch (const TransportError& e) {
            if (!e.retryable() || t == transport_tries) throw;
            sleep_(std::chrono::milliseconds(250L << (t - 1)));
        }
    }
    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - started);

    if (wire.text.empty() && !wire.truncated) {
        throw TransportError(req.role_tag + ": provider returned empty text", false);
    }

    record(ctx, req.role_tag, body_text, wire.text, attempt);

    ChatResponse resp;
    resp.text = std::move(wire.text);
    resp.provider_id = provider_.id();
    resp.latency_ms = elapsed.count();
    resp.truncated = wire.truncated;
    return resp;
}

} // namespace interpcast::gateway
