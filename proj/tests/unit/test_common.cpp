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

#include <fstream>

#include "fixtures.hpp"
#include "mmcurate/common/assets.hpp"
#include "mmcurate/common/digest.hpp"
#include "mmcurate/common/error.hpp"
#include "mmcurate/common/jsonl.hpp"
#include "mmcurate/common/text.hpp"
#include "mmcurate/synthesis/templates.hpp"

namespace mmcurate {
namespace {

TEST(Text, TrimAndCollapse) {
  EXPECT_EQ(text::trim("  a b \n"), "a b");
  EXPECT_EQ(text::trim(""), "");
  EXPECT_EQ(text::collapse_whitespace("a \t\n b   c"), "a b c");
}

TEST(Text, NfcComposesDecomposedAccents) {
  const std::string decomposed = "cafe\xCC\x81";  // e + combining acute
  const std::string composed = "caf\xC3\xA9";
  EXPECT_EQ(text::nfc(decomposed), composed);
  EXPECT_EQ(text::nfc(composed), composed);
}

TEST(Text, NfcPassesInvalidUtf8Through) {
  const std::string bad = "ab\xFF\xFE";
  EXPECT_EQ(text::nfc(bad), bad);
}

TEST(Text, UnifiesCurlyQuotes) {
  EXPECT_EQ(text::unify_quotes("\xE2\x80\x9Chi\xE2\x80\x9D it\xE2\x80\x99s"), "\"hi\" it's");
}

TEST(Text, VerbatimNormalizationKeepsCase) {
  EXPECT_EQ(text::normalize_verbatim("  The  Macula\n is \xE2\x80\x98thin\xE2\x80\x99 "), "The Macula is 'thin'");
}

TEST(Text, PhraseMatchRespectsWordBoundaries) {
  EXPECT_TRUE(text::contains_phrase("the retina is attached", "retina"));
  EXPECT_FALSE(text::contains_phrase("the retinal layers", "retina"));
  EXPECT_FALSE(text::contains_phrase("preretina", "retina"));
  EXPECT_TRUE(text::contains_phrase("retina", "retina"));
  EXPECT_TRUE(text::contains_phrase("optical coherence tomography, again", "optical coherence tomography"));
  EXPECT_TRUE(text::contains_phrase("ultra-widefield imaging", "ultra-widefield"));
}

TEST(Text, TokenizeSplitsOnPunctuation) {
  const std::vector<std::string> expected{"yes", "the", "disc", "is", "swollen"};
  EXPECT_EQ(text::tokenize_words("Yes. The disc, is SWOLLEN!"), expected);
  EXPECT_TRUE(text::tokenize_words(" .,; ").empty());
}

TEST(Digest, Sha256KnownVectors) {
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Digest, JsonDigestIgnoresKeyOrder) {
  auto a = nlohmann::json::parse(R"({"b": 1, "a": [1, 2]})");
  auto b = nlohmann::json::parse(R"({"a": [1, 2], "b": 1})");
  EXPECT_EQ(json_digest(a), json_digest(b));
  b["b"] = 2;
  EXPECT_NE(json_digest(a), json_digest(b));
}

TEST(Digest, Base64RoundTrip) {
  EXPECT_EQ(base64_encode(std::string_view("foobar")), "Zm9vYmFy");
  EXPECT_EQ(base64_encode(std::string_view("fo")), "Zm8=");
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    std::string s;
    for (std::size_t k = rng() % 64; k > 0; --k) s.push_back(static_cast<char>(rng() & 0xFF));
    EXPECT_EQ(base64_decode(base64_encode(std::string_view(s))), s);
  }
}

TEST(Jsonl, RoundTripAndLineNumbers) {
  testing::TempDir dir("jsonl");
  std::vector<nlohmann::json> rows{{{"a", 1}}, {{"b", "x"}}};
  write_jsonl(dir / "f.jsonl", rows);
  EXPECT_EQ(read_jsonl(dir / "f.jsonl"), rows);
  {
    std::ofstream out(dir / "bad.jsonl");
    out << "{\"a\": 1}\n\n{oops\n";
  }
  try {
    read_jsonl(dir / "bad.jsonl");
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find(":3"), std::string::npos) << e.what();
  }
}

TEST(Jsonl, AppenderFlushesEveryLine) {
  testing::TempDir dir("append");
  JsonlAppender out(dir / "log.jsonl");
  out.append({{"n", 1}});
  out.append({{"n", 2}});
  EXPECT_EQ(read_jsonl(dir / "log.jsonl").size(), 2u);
}

TEST(Assets, EveryTemplateIsEmbedded) {
  using synthesis::TemplateId;
  for (auto id : {TemplateId::kRelevance, TemplateId::kSeparate, TemplateId::kScore, TemplateId::kVqa,
                  TemplateId::kConversation, TemplateId::kCot, TemplateId::kVerifyVqa, TemplateId::kVerifyConversation,
                  TemplateId::kVerifyCot, TemplateId::kJudge, TemplateId::kExtract, TemplateId::kTrainVqa,
                  TemplateId::kTrainConversation, TemplateId::kTrainCot}) {
    EXPECT_FALSE(synthesis::template_text(id).empty()) << synthesis::template_name(id);
  }
  EXPECT_THROW(asset("prompts/missing.v9.txt"), ConfigError);
}

TEST(Assets, TermLinesSkipCommentsAndBlanks) {
  const std::vector<std::string> expected{"macula", "optic disc"};
  EXPECT_EQ(parse_term_lines("# header\nmacula\n\n  optic disc  \n# tail\n"), expected);
}

}  // namespace
}  // namespace mmcurate
