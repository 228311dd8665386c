// Copyright 2026 The mmcurate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mmcurate/backends/http.hpp"

#include <atomic>
#include <thread>

#include <httplib.h>

#include "mmcurate/common/error.hpp"
#include "mmcurate/common/log.hpp"

namespace mmcurate::backends {

namespace {

constexpr const char* kTagHeader = "X-Request-Tag";

struct SplitUrl {
  std::string origin;
  std::string prefix;
};

SplitUrl split_url(const std::string& url) {
  auto scheme = url.find("://");
  if (scheme == std::string::npos) throw ConfigError("backend url needs a scheme: " + url);
  auto slash = url.find('/', scheme + 3);
  if (slash == std::string::npos) return {url, ""};
  std::string prefix = url.substr(slash);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  return {url.substr(0, slash), prefix};
}

Json post_json(const HttpOptions& options, const std::string& path, const Json& body,
               const httplib::Headers& extra_headers = {}) {
  auto [origin, prefix] = split_url(options.base_url);
  httplib::Client client(origin);
  auto secs = std::chrono::duration_cast<std::chrono::seconds>(options.timeout);
  auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(options.timeout - secs);
  client.set_connection_timeout(secs.count(), static_cast<time_t>(usecs.count()));
  client.set_read_timeout(secs.count(), static_cast<time_t>(usecs.count()));
  httplib::Headers headers = extra_headers;
  if (!options.api_key.empty()) headers.emplace("Authorization", "Bearer " + options.api_key);

  const std::string payload = body.dump();
  std::string last_error;
  for (int attempt = 0; attempt <= options.transport_retries; ++attempt) {
    if (attempt > 0) std::this_thread::sleep_for(options.backoff * attempt);
    auto res = client.Post(prefix + path, headers, payload, "application/json");
    if (!res) {
      last_error = httplib::to_string(res.error());
      log::warn("backend transport error", {{"url", options.base_url + path}, {"error", last_error}, {"attempt", attempt}});
      continue;
    }
    if (res->status >= 500 && res->status != 501) {  // 501: capability missing, retrying cannot help
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200) {
      throw BackendError(options.base_url + path + " returned HTTP " + std::to_string(res->status) + ": " + res->body);
    }
    try {
      return Json::parse(res->body);
    } catch (const Json::parse_error& e) {
      throw ParseError(options.base_url + path + " returned invalid JSON: " + e.what());
    }
  }
  throw BackendUnavailable(options.base_url + path + " unreachable after " +
                           std::to_string(options.transport_retries + 1) + " attempts: " + last_error);
}

}  // namespace

// ---------------------------------------------------------------------------

ChatCompletionsClient::ChatCompletionsClient(HttpOptions options, std::string model)
    : options_(std::move(options)), model_(std::move(model)) {
  split_url(options_.base_url);
}

ChatResponse ChatCompletionsClient::chat(const ChatRequest& req) {
  req.validate();
  httplib::Headers headers;
  if (!req.tag.empty()) headers.emplace(kTagHeader, req.tag);
  auto body = post_json(options_, "/v1/chat/completions", to_wire(req, model_), headers);
  return chat_response_from_wire(body);
}

// ---------------------------------------------------------------------------

SidecarClient::SidecarClient(HttpOptions options, int embedding_dimension)
    : options_(std::move(options)), dimension_(embedding_dimension) {
  split_url(options_.base_url);
}

Json SidecarClient::post(schema::Endpoint endpoint, const Json& body) {
  schema::validate_request(endpoint, body);
  return post_json(options_, std::string(schema::path(endpoint)), body);
}

EmbeddingResponse SidecarClient::embed(const EmbeddingRequest& req) {
  auto resp = schema::decode_embedding_response(post(schema::Endpoint::kEmbed, schema::encode(req)));
  if (dimension_ > 0 && static_cast<int>(resp.vector.size()) != dimension_)
    throw ParseError("/embed returned dimension " + std::to_string(resp.vector.size()) + ", expected " +
                     std::to_string(dimension_));
  return resp;
}

Transcript SidecarClient::transcribe(const TranscribeRequest& req) {
  return schema::decode_transcript(post(schema::Endpoint::kTranscribe, schema::encode(req)));
}

FrameClassification SidecarClient::classify_frame(const ImagePayload& frame) {
  return schema::decode_classification(post(schema::Endpoint::kClassifyFrame, schema::encode_image(frame)));
}

RegionProposal SidecarClient::propose_regions(const ImagePayload& image) {
  auto out = schema::decode_regions(post(schema::Endpoint::kRegions, schema::encode_image(image)));
  for (const auto& r : out.regions) {
    if (!r.box.inside(image.image.width(), image.image.height()))
      throw ParseError("/regions returned a box outside the image bounds");
  }
  return out;
}

ImageTextSimilarity SidecarClient::score_image_text(const ImageTextRequest& req) {
  auto out = schema::decode_clip_scores(post(schema::Endpoint::kClipScore, schema::encode(req)));
  if (out.scores.size() != req.prompts.size())
    throw ParseError("/clip_score returned " + std::to_string(out.scores.size()) + " scores for " +
                     std::to_string(req.prompts.size()) + " prompts");
  return out;
}

DetectionResult SidecarClient::detect_sensitive(const ImagePayload& image) {
  return schema::decode_detections(post(schema::Endpoint::kDetect, schema::encode_image(image)));
}

std::vector<std::string> SidecarClient::adapters() {
  auto [origin, prefix] = split_url(options_.base_url);
  httplib::Client client(origin);
  auto res = client.Get(prefix + std::string(schema::path(schema::Endpoint::kHealthz)));
  if (!res) throw BackendUnavailable(options_.base_url + "/healthz unreachable");
  if (res->status != 200) throw BackendError("/healthz returned HTTP " + std::to_string(res->status));
  Json body;
  try {
    body = Json::parse(res->body);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("/healthz returned invalid JSON: ") + e.what());
  }
  schema::validate_response(schema::Endpoint::kHealthz, body);
  return body["adapters"].get<std::vector<std::string>>();
}

// ---------------------------------------------------------------------------

namespace {

void reply(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

template <typename Fn>
void guarded(httplib::Response& res, Fn&& fn) {
  try {
    reply(res, 200, fn());
  } catch (const ParseError& e) {
    reply(res, 400, Json{{"error", e.what()}});
  } catch (const ValidationError& e) {
    reply(res, 400, Json{{"error", e.what()}});
  } catch (const BackendError& e) {
    reply(res, 501, Json{{"error", e.what()}});
  } catch (const std::exception& e) {
    reply(res, 500, Json{{"error", e.what()}});
  }
}

Json parse_body(const httplib::Request& req) {
  try {
    return Json::parse(req.body);
  } catch (const Json::parse_error& e) {
    throw ValidationError(std::string("invalid JSON body: ") + e.what());
  }
}

struct ServerCore {
  httplib::Server server;
  std::thread thread;
  int port = 0;

  int start() {
    port = server.bind_to_any_port("127.0.0.1");
    if (port <= 0) throw Error("cannot bind test server");
    thread = std::thread([this] { server.listen_after_bind(); });
    server.wait_until_ready();
    return port;
  }

  void stop() {
    if (thread.joinable()) {
      server.stop();
      thread.join();
    }
  }
};

}  // namespace

struct SidecarServer::Impl {
  Adapters adapters;
  ServerCore core;
};

SidecarServer::SidecarServer(Adapters adapters) : impl_(std::make_unique<Impl>()) {
  impl_->adapters = std::move(adapters);
  auto& a = impl_->adapters;
  auto& srv = impl_->core.server;
  using schema::Endpoint;

  auto capability = [](const auto& ptr, const char* name) -> decltype(auto) {
    if (!ptr) throw BackendError(std::string("adapter not configured: ") + name);
    return *ptr;
  };

  srv.Get("/healthz", [&a](const httplib::Request&, httplib::Response& res) {
    Json adapters = Json::array();
    if (a.embedder) adapters.push_back("embed");
    if (a.vision) {
      for (const char* name : {"classify_frame", "regions", "clip_score", "detect"}) adapters.push_back(name);
    }
    if (a.transcriber) adapters.push_back("transcribe");
    reply(res, 200, Json{{"status", "ok"}, {"adapters", adapters}});
  });
  srv.Post("/embed", [&a, capability](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      auto& e = capability(a.embedder, "embed");
      return schema::encode(e.embed(schema::decode_embedding_request(parse_body(req))));
    });
  });
  srv.Post("/transcribe", [&a, capability](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      auto& t = capability(a.transcriber, "transcribe");
      return schema::encode(t.transcribe(schema::decode_transcribe_request(parse_body(req))));
    });
  });
  auto image_endpoint = [&srv, &a, capability](Endpoint e, auto call) {
    srv.Post(std::string(schema::path(e)), [&a, capability, e, call](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        auto body = parse_body(req);
        schema::validate_request(e, body);
        auto& v = capability(a.vision, "vision");
        return call(v, body);
      });
    });
  };
  image_endpoint(Endpoint::kClassifyFrame,
                 [](VisionBackend& v, const Json& body) { return schema::encode(v.classify_frame(schema::decode_image(body))); });
  image_endpoint(Endpoint::kRegions,
                 [](VisionBackend& v, const Json& body) { return schema::encode(v.propose_regions(schema::decode_image(body))); });
  image_endpoint(Endpoint::kDetect,
                 [](VisionBackend& v, const Json& body) { return schema::encode(v.detect_sensitive(schema::decode_image(body))); });
  image_endpoint(Endpoint::kClipScore, [](VisionBackend& v, const Json& body) {
    return schema::encode(v.score_image_text(schema::decode_clip_request(body)));
  });
}

SidecarServer::~SidecarServer() { stop(); }
int SidecarServer::start() { return impl_->core.start(); }
void SidecarServer::stop() { impl_->core.stop(); }
std::string SidecarServer::base_url() const { return "http://127.0.0.1:" + std::to_string(impl_->core.port); }

struct ChatServer::Impl {
  std::shared_ptr<ChatBackend> backend;
  ServerCore core;
  std::atomic<std::size_t> requests{0};
};

ChatServer::ChatServer(std::shared_ptr<ChatBackend> backend) : impl_(std::make_unique<Impl>()) {
  impl_->backend = std::move(backend);
  auto* impl = impl_.get();
  impl->core.server.Post("/v1/chat/completions", [impl](const httplib::Request& req, httplib::Response& res) {
    ++impl->requests;
    guarded(res, [&] {
      auto body = parse_body(req);
      ChatRequest chat;
      for (const auto& m : body.at("messages")) {
        auto role = m.at("role").get<std::string>();
        if (role == "system") {
          chat.system = m.at("content").get<std::string>();
        } else {
          chat.messages.push_back({role, m.at("content").get<std::string>()});
        }
      }
      chat.temperature = body.value("temperature", 0.0);
      chat.max_tokens = body.value("max_tokens", 2048);
      if (body.contains("seed")) chat.seed = body["seed"].get<std::int64_t>();
      chat.tag = req.get_header_value(kTagHeader);
      auto out = impl->backend->chat(chat);
      return Json{{"object", "chat.completion"},
                  {"model", body.value("model", "")},
                  {"choices", Json::array({Json{{"index", 0},
                                                {"message", {{"role", "assistant"}, {"content", out.content}}},
                                                {"finish_reason", out.finish_reason}}})}};
    });
  });
}

ChatServer::~ChatServer() { stop(); }
int ChatServer::start() { return impl_->core.start(); }
void ChatServer::stop() { impl_->core.stop(); }
std::string ChatServer::base_url() const { return "http://127.0.0.1:" + std::to_string(impl_->core.port); }
std::size_t ChatServer::requests() const { return impl_->requests.load(); }

}  // namespace mmcurate::backends
