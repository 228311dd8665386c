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

#pragma once

#include <chrono>
#include <memory>
#include <string>

#include "mmcurate/backends/protocols.hpp"
#include "mmcurate/backends/schema.hpp"

namespace mmcurate::backends {

struct HttpOptions {
  std::string base_url;  // scheme://host:port[/prefix]
  std::string api_key;  // sent as a bearer token when non-empty
  std::chrono::milliseconds timeout{60000};
  int transport_retries = 3;
  std::chrono::milliseconds backoff{200};
};

/// Client for any endpoint speaking the chat-completions convention
/// (POST {base}/v1/chat/completions). The request tag is sent as an
/// X-Request-Tag header, which compatible servers ignore.
class ChatCompletionsClient final : public ChatBackend {
 public:
  ChatCompletionsClient(HttpOptions options, std::string model);
  ChatResponse chat(const ChatRequest& req) override;

 private:
  HttpOptions options_;
  std::string model_;
};

/// Client for the inference sidecar. Implements every non-chat protocol.
class SidecarClient final : public EmbeddingBackend, public TranscriptionBackend, public VisionBackend {
 public:
  SidecarClient(HttpOptions options, int embedding_dimension);

  EmbeddingResponse embed(const EmbeddingRequest& req) override;
  int dimension() const override { return dimension_; }
  Transcript transcribe(const TranscribeRequest& req) override;
  FrameClassification classify_frame(const ImagePayload& frame) override;
  RegionProposal propose_regions(const ImagePayload& image) override;
  ImageTextSimilarity score_image_text(const ImageTextRequest& req) override;
  DetectionResult detect_sensitive(const ImagePayload& image) override;

  /// GET /healthz; returns the adapter names the sidecar reports.
  std::vector<std::string> adapters();

 private:
  Json post(schema::Endpoint endpoint, const Json& body);

  HttpOptions options_;
  int dimension_;
};

/// Serves mock (or any) backends over the sidecar wire contract. Used by
/// tests and for contract-parity checks against a real sidecar.
class SidecarServer {
 public:
  struct Adapters {
    std::shared_ptr<EmbeddingBackend> embedder;
    std::shared_ptr<TranscriptionBackend> transcriber;
    std::shared_ptr<VisionBackend> vision;
  };

  explicit SidecarServer(Adapters adapters);
  ~SidecarServer();
  SidecarServer(const SidecarServer&) = delete;
  SidecarServer& operator=(const SidecarServer&) = delete;

  /// Binds to 127.0.0.1 on an ephemeral port and serves on a background thread.
  int start();
  void stop();
  std::string base_url() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Minimal chat-completions server backed by a ChatBackend. The client's
/// request tag travels in the X-Request-Tag header and is restored here.
class ChatServer {
 public:
  explicit ChatServer(std::shared_ptr<ChatBackend> backend);
  ~ChatServer();
  ChatServer(const ChatServer&) = delete;
  ChatServer& operator=(const ChatServer&) = delete;

  int start();
  void stop();
  std::string base_url() const;
  std::size_t requests() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace mmcurate::backends
