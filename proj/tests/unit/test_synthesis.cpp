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

#include "fixtures.hpp"
#include "mmcurate/common/error.hpp"
#include "mmcurate/synthesis/json_extract.hpp"
#include "mmcurate/synthesis/synthesis.hpp"
#include "mmcurate/synthesis/templates.hpp"

namespace mmcurate::synthesis {
namespace {

curation::SeparatedTranscript sample() {
  curation::SeparatedTranscript t;
  t.supplemental_context = {"The patient is 70.", "Follow-up in 3 months."};
  t.scenes = {{1, "The OCT shows subretinal fluid."}, {2, "The fovea is thickened."}};
  t.scene_count = 2;
  return t;
}

TEST(JsonExtract, FencesAndProse) {
  EXPECT_EQ(parse_llm_json("```json\n{\"a\": 1}\n```", JsonShape::kObject)["a"], 1);
  EXPECT_EQ(parse_llm_json("Sure! {\"a\": {\"b\": \"}\"}} trailing", JsonShape::kObject)["a"]["b"], "}");
  EXPECT_EQ(parse_llm_json("x [1, 2] y {\"z\": 0}", JsonShape::kArray).size(), 2u);
  EXPECT_EQ(parse_llm_json("{broken {\"ok\": true}", JsonShape::kObject)["ok"], true);
  EXPECT_THROW(parse_llm_json("no json here", JsonShape::kObject), ParseError);
  EXPECT_THROW(parse_llm_json("[1, 2]", JsonShape::kObject), ParseError);
}

TEST(Templates, FillSlots) {
  EXPECT_EQ(fill_slots("type={TARGET_TYPE} json={\"a\": 1}", {{"TARGET_TYPE", "what"}}), "type=what json={\"a\": 1}");
  EXPECT_THROW(fill_slots("{MISSING_SLOT}", {}), ConfigError);
}

TEST(Templates, BlocksLayout) {
  EXPECT_EQ(render_blocks(sample()),
            "[SUPPLEMENTAL CONTEXT]\n- The patient is 70.\n- Follow-up in 3 months.\n\n[SCENE]\n"
            "Scene 1: The OCT shows subretinal fluid.\nScene 2: The fovea is thickened.\n");
  const auto payload = nlohmann::json::parse(render_payload(sample()));
  EXPECT_EQ(payload.at("scenes").size(), 2u);
  EXPECT_EQ(payload.at("supplemental_context").size(), 2u);
}

TEST(Templates, FewShotsLoad) {
  for (const char* name : {"separate", "score", "conversation", "cot"}) {
    const auto shots = load_fewshot(name);
    EXPECT_FALSE(shots.empty()) << name;
    for (const auto& s : shots) {
      EXPECT_FALSE(s.input.empty());
      EXPECT_FALSE(s.output.empty());
    }
  }
}

TEST(Vqa, ParsesAndValidates) {
  auto v = parse_vqa(R"({"question_type": "yes_no", "question": "Is fluid present?", "answer": "Yes."})",
                     QuestionType::kYesNo);
  ASSERT_TRUE(v);
  EXPECT_EQ(v->answer, "Yes.");
  EXPECT_THROW(parse_vqa(R"({"question_type": "yes_no", "question": "Is fluid present?", "answer": "yes"})",
                         QuestionType::kYesNo),
               ParseError);
  EXPECT_THROW(parse_vqa(R"({"question_type": "what", "question": "Q?", "answer": "A."})", QuestionType::kWhere),
               ParseError);
  EXPECT_THROW(parse_vqa(R"({"question": "", "answer": "A."})", QuestionType::kWhat), ParseError);
}

TEST(Vqa, NotApplicableEscapeHatch) {
  EXPECT_FALSE(parse_vqa(R"({"question_type": "where", "question": "N/A", "answer": "N/A"})", QuestionType::kWhere));
  EXPECT_FALSE(parse_vqa(R"({"question": "Where?", "answer": "n/a."})", QuestionType::kWhere));
  EXPECT_TRUE(is_not_applicable(" N/A "));
  EXPECT_FALSE(is_not_applicable("No."));
}

TEST(Vqa, RequestEchoesTargetType) {
  const auto req = vqa_request(sample(), QuestionType::kWhere, {});
  EXPECT_EQ(req.tag, "vqa.where");
  EXPECT_NE(req.system.find("where"), std::string::npos);
  EXPECT_EQ(req.system.find("{TARGET_TYPE}"), std::string::npos);
  EXPECT_NE(req.last_user_content().find("subretinal fluid"), std::string::npos);
}

nlohmann::json turns(int pairs) {
  auto a = nlohmann::json::array();
  for (int i = 0; i < pairs; ++i) {
    a.push_back({{"from", "user"}, {"value", "q" + std::to_string(i)}});
    a.push_back({{"from", "assistant"}, {"value", "a" + std::to_string(i)}});
  }
  return a;
}

TEST(Conversation, PairCountsAndAlternation) {
  EXPECT_THROW(parse_conversation(turns(2).dump()), ParseError);
  EXPECT_EQ(parse_conversation(turns(3).dump()).size(), 6u);
  EXPECT_EQ(parse_conversation(turns(4).dump()).size(), 8u);
  EXPECT_THROW(parse_conversation(turns(5).dump()), ParseError);
  auto swapped = turns(3);
  std::swap(swapped[0], swapped[1]);
  EXPECT_THROW(parse_conversation(swapped.dump()), ParseError);
  auto odd = turns(3);
  odd.push_back({{"from", "user"}, {"value", "dangling"}});
  EXPECT_THROW(parse_conversation(odd.dump()), ParseError);
}

TEST(Cot, ExactlyOneExchange) {
  EXPECT_EQ(parse_cot(turns(1).dump()).second, "a0");
  EXPECT_THROW(parse_cot(turns(2).dump()), ParseError);
  EXPECT_THROW(parse_cot(R"([{"from": "assistant", "value": "x"}, {"from": "user", "value": "y"}])"), ParseError);
}

TEST(Cot, RecordsEffectiveTemperature) {
  testing::RecordingChat chat([](const backends::ChatRequest& r, int) -> std::string {
    return r.temperature > 0.5 ? turns(1).dump() : "not json";
  });
  const auto c = synthesize_cot(sample(), {"img", backends::Modality::kOCT}, chat, backends::RetryPolicy{2, 0.2});
  EXPECT_NEAR(c.temperature, 0.6, 1e-12);
  EXPECT_EQ(chat.requests().front().temperature, kCotTemperature);
  EXPECT_EQ(c.modality, backends::Modality::kOCT);
}

TEST(Synthesize, VqaKeepsImageContext) {
  testing::RecordingChat chat([](const backends::ChatRequest&, int) {
    return R"({"question_type": "what", "question": "What is seen?", "answer": "Fluid."})";
  });
  const auto v = synthesize_vqa(sample(), QuestionType::kWhat, {"img-1", backends::Modality::kUWF}, chat, {});
  ASSERT_TRUE(v);
  EXPECT_EQ(v->image_ref, "img-1");
  EXPECT_EQ(v->modality, backends::Modality::kUWF);
  EXPECT_EQ(v->question_type, QuestionType::kWhat);
}

}  // namespace
}  // namespace mmcurate::synthesis
