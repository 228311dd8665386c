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

#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "mmcurate/backends/mock.hpp"
#include "mmcurate/backends/schema.hpp"
#include "mmcurate/backends/structured.hpp"
#include "mmcurate/common/error.hpp"
#include "mmcurate/common/jsonl.hpp"

namespace mmcurate::backends {
namespace {

using testing::RecordingChat;

TEST(Schema, SharedFixturesValidateBothWays) {
  std::size_t checked = 0;
  for (auto e : schema::all_endpoints()) {
    const auto name = std::string(schema::path(e).substr(1));
    const auto fx = read_json_file(testing::schema_dir() / (name + ".json"));
    for (const char* side : {"request", "response"}) {
      const bool req = std::string(side) == "request";
      for (const auto& body : fx.at(side).at("valid")) {
        EXPECT_NO_THROW(req ? schema::validate_request(e, body) : schema::validate_response(e, body))
            << name << " " << side << " " << body.dump();
        ++checked;
      }
      for (const auto& body : fx.at(side).at("invalid")) {
        EXPECT_THROW(req ? schema::validate_request(e, body) : schema::validate_response(e, body), ParseError)
            << name << " " << side << " " << body.dump();
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 50u);
}

TEST(Schema, EncodersProduceValidBodies) {
  Image img(5, 4, 3, 9);
  ImagePayload p{"ref/1", img};
  EXPECT_NO_THROW(schema::validate_request(schema::Endpoint::kEmbed, schema::encode(EmbeddingRequest{{}, p})));
  EXPECT_NO_THROW(
      schema::validate_request(schema::Endpoint::kTranscribe, schema::encode(TranscribeRequest{"a", 1.0, 2.0})));
  ImageTextRequest clip{p, Box{0, 0, 2, 2}, {"macula", "portrait photograph"}};
  const auto body = schema::encode(clip);
  EXPECT_NO_THROW(schema::validate_request(schema::Endpoint::kClipScore, body));
  const auto back = schema::decode_clip_request(body);
  EXPECT_EQ(back.image.image, img);
  EXPECT_EQ(back.region, clip.region);
  EXPECT_EQ(back.prompts, clip.prompts);
  EXPECT_NO_THROW(schema::validate_response(schema::Endpoint::kClassifyFrame,
                                            schema::encode(FrameClassification{0.5, Modality::kOCT, 0.7})));
}

TEST(Schema, EndpointNames) {
  EXPECT_EQ(schema::endpoint_from_name("clip_score"), schema::Endpoint::kClipScore);
  EXPECT_THROW(schema::endpoint_from_name("segment"), ValidationError);
  EXPECT_EQ(schema::all_endpoints().size(), 7u);
}

TEST(ChatRequestShape, RolesMustAlternateAndEndOnUser) {
  ChatRequest r;
  r.messages = {{"user", "a"}};
  EXPECT_NO_THROW(r.validate());
  r.messages = {{"user", "a"}, {"assistant", "b"}};
  EXPECT_THROW(r.validate(), ValidationError);
  r.messages = {{"assistant", "a"}, {"user", "b"}};
  EXPECT_THROW(r.validate(), ValidationError);
  r.messages = {{"user", "a"}, {"user", "b"}};
  EXPECT_THROW(r.validate(), ValidationError);
  r.messages = {{"user", "a"}};
  r.temperature = -0.1;
  EXPECT_THROW(r.validate(), ValidationError);
}

TEST(ChatRequestShape, WireFormatOmitsTag) {
  ChatRequest r;
  r.system = "sys";
  r.messages = {{"user", "hi"}};
  r.tag = "vqa.what";
  const auto wire = to_wire(r, "m");
  EXPECT_EQ(wire.at("model"), "m");
  EXPECT_EQ(wire.at("messages").size(), 2u);
  EXPECT_EQ(wire.at("messages")[0].at("role"), "system");
  EXPECT_EQ(wire.dump().find("vqa.what"), std::string::npos);
  ChatRequest other = r;
  other.tag = "different";
  EXPECT_EQ(request_digest(r), request_digest(other));
  other.temperature = 0.5;
  EXPECT_NE(request_digest(r), request_digest(other));
}

TEST(RetryPolicy, TemperatureSchedule) {
  RetryPolicy p{3, 0.2};
  EXPECT_DOUBLE_EQ(p.temperature_for(0, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(p.temperature_for(1, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(p.temperature_for(2, 0.0), 0.2);
  EXPECT_DOUBLE_EQ(p.temperature_for(3, 0.0), 0.2);
  EXPECT_DOUBLE_EQ(p.temperature_for(2, 0.4), 0.6);
  EXPECT_NEAR(p.temperature_for(3, 0.4), 0.8, 1e-12);
  EXPECT_DOUBLE_EQ(p.temperature_for(9, 1.9), 2.0);
}

ChatRequest simple_request(double temperature = 0.0) {
  ChatRequest r;
  r.messages = {{"user", "q"}};
  r.temperature = temperature;
  r.tag = "t";
  return r;
}

int parse_int(const std::string& s) {
  try {
    return std::stoi(s);
  } catch (const std::exception&) {
    throw ParseError("not an int: " + s);
  }
}

TEST(CallStructured, RecoversOnEscalatedTemperature) {
  RecordingChat chat([](const ChatRequest& r, int) { return r.temperature > 0.0 ? "42" : "garbage"; });
  int attempts = 0;
  const int v = call_structured<int>(chat, simple_request(), RetryPolicy{2, 0.2}, parse_int, &attempts);
  EXPECT_EQ(v, 42);
  EXPECT_EQ(attempts, 3);
  const auto reqs = chat.requests();
  ASSERT_EQ(reqs.size(), 3u);
  EXPECT_EQ(reqs[0].temperature, 0.0);
  EXPECT_EQ(reqs[1].temperature, 0.0);
  EXPECT_EQ(reqs[2].temperature, 0.2);
}

TEST(CallStructured, QuarantinesAfterRetries) {
  RecordingChat chat([](const ChatRequest&, int) { return "never"; });
  try {
    call_structured<int>(chat, simple_request(), RetryPolicy{2, 0.2}, parse_int);
    FAIL();
  } catch (const QuarantineError& e) {
    EXPECT_EQ(e.attempts(), 3);
    EXPECT_NE(std::string(e.what()).find("not an int"), std::string::npos);
  }
  EXPECT_EQ(chat.calls(), 3u);
}

TEST(CallStructured, BackendErrorQuarantinesImmediately) {
  RecordingChat chat([](const ChatRequest&, int) -> std::string { throw BackendError("refused"); });
  EXPECT_THROW(call_structured<int>(chat, simple_request(), RetryPolicy{}, parse_int), QuarantineError);
  EXPECT_EQ(chat.calls(), 1u);
}

TEST(CallStructured, TransportErrorPropagates) {
  RecordingChat chat([](const ChatRequest&, int) -> std::string { throw TransportError("down"); });
  EXPECT_THROW(call_structured<int>(chat, simple_request(), RetryPolicy{}, parse_int), TransportError);
}

TEST(ScriptedChat, LookupOrder) {
  auto fx = ChatFixtures::from_json(nlohmann::json::parse(R"({
    "rules": [
      {"tag": "vqa.*", "contains": "P01", "temperature": 0.2, "response": "hot"},
      {"tag": "vqa.*", "contains": "P01", "response": {"k": 1}},
      {"tag": "score", "response": "score-rule"}
    ],
    "defaults": {"vqa.*": "vqa-default", "judge": "judge-default"}
  })"));
  ScriptedChat chat(fx);
  auto req = [](std::string tag, std::string user, double t = 0.0) {
    ChatRequest r;
    r.messages = {{"user", std::move(user)}};
    r.tag = std::move(tag);
    r.temperature = t;
    return r;
  };
  EXPECT_EQ(chat.chat(req("vqa.what", "case P01 here", 0.2)).content, "hot");
  EXPECT_EQ(chat.chat(req("vqa.what", "case P01 here")).content, R"({"k":1})");
  EXPECT_EQ(chat.chat(req("vqa.where", "case P02")).content, "vqa-default");
  EXPECT_EQ(chat.chat(req("score", "x")).content, "score-rule");
  EXPECT_EQ(chat.chat(req("judge", "x")).content, "judge-default");
  EXPECT_THROW(chat.chat(req("cot", "x")), BackendError);
  EXPECT_EQ(chat.calls("vqa.what"), 2u);
  EXPECT_EQ(chat.calls(), 6u);

  ChatFixtures by_digest;
  auto exact = req("cot", "x");
  by_digest.by_digest[request_digest(exact)] = "exact";
  by_digest.merge(fx);
  ScriptedChat chat2(by_digest);
  EXPECT_EQ(chat2.chat(exact).content, "exact");
}

TEST(MockEmbedder, UnitLengthAndDeterministic) {
  MockEmbedder a(32, 5), b(32, 5), c(32, 6);
  EmbeddingRequest r{std::string("macula"), std::nullopt};
  const auto va = a.embed(r).vector;
  double norm = 0.0;
  for (double x : va) norm += x * x;
  EXPECT_NEAR(std::sqrt(norm), 1.0, 1e-12);
  EXPECT_EQ(va, b.embed(r).vector);
  EXPECT_NE(va, c.embed(r).vector);
  EXPECT_THROW(a.embed(EmbeddingRequest{}), ValidationError);
}

TEST(MockTranscriber, ReturnsOverlappingSegments) {
  MockTranscriber t(MockTranscriber::fixtures_from_json(nlohmann::json::parse(R"({
    "audio/a": [{"start_s": 0, "end_s": 2, "text": "one"}, {"start_s": 2, "end_s": 4, "text": "two"},
                {"start_s": 10, "end_s": 12, "text": "three"}]})")));
  EXPECT_EQ(t.transcribe({"audio/a", 1.0, 3.0}).text(), "one two");
  EXPECT_EQ(t.transcribe({"audio/a", 4.0, 9.0}).text(), "");
  EXPECT_EQ(t.transcribe({"audio/missing", 0.0, 100.0}).segments.size(), 0u);
}

TEST(MockVision, ClipScoresHaveOnePerPrompt) {
  auto fx = VisionFixtures::from_json(nlohmann::json::parse(R"({
    "clip_scores": {
      "img": [{"box": {"x": 0, "y": 0, "w": 2, "h": 2}, "scores": {"macula": 0.4, "*": 0.01}}],
      "*": [{"scores": {"macula": 0.33}}]
    }})"));
  MockVision v(fx, 1);
  ImagePayload img{"img", Image(4, 4, 3, 1)};
  auto s = v.score_image_text({img, Box{0, 0, 2, 2}, {"macula", "logo"}}).scores;
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0], 0.4);
  EXPECT_EQ(s[1], 0.01);
  s = v.score_image_text({img, Box{1, 1, 2, 2}, {"macula", "a", "b"}}).scores;
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s[0], 0.33);
  ImagePayload other{"other", Image(4, 4, 3, 1)};
  EXPECT_EQ(v.score_image_text({other, Box{0, 0, 1, 1}, {"x"}}).scores,
            v.score_image_text({other, Box{0, 0, 1, 1}, {"x"}}).scores);
  EXPECT_TRUE(v.propose_regions(img).regions.empty());
  EXPECT_TRUE(v.detect_sensitive(img).detections.empty());
}

TEST(BackendSet, RoleRoutingFallsBack) {
  auto main = std::make_shared<RecordingChat>([](const ChatRequest&, int) { return "main"; });
  auto cot = std::make_shared<RecordingChat>([](const ChatRequest&, int) { return "cot"; });
  BackendSet set;
  set.chat = main;
  EXPECT_EQ(&set.chat_for(ChatRole::kCot), main.get());
  set.cot_chat = cot;
  EXPECT_EQ(&set.chat_for(ChatRole::kCot), cot.get());
  EXPECT_EQ(&set.chat_for(ChatRole::kVerifyCot), cot.get());
  EXPECT_EQ(&set.chat_for(ChatRole::kVerify), main.get());
  EXPECT_EQ(&set.chat_for(ChatRole::kJudge), main.get());
  BackendSet empty;
  EXPECT_THROW(empty.chat_for(ChatRole::kScore), ConfigError);
}

}  // namespace
}  // namespace mmcurate::backends
