/*
 * Copyright 2026 The cgraph Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "core/text.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <filesystem>

using namespace curriculum;

TEST(Text, Tokens) {
  EXPECT_TRUE(text::is_token("prop_causale"));
  EXPECT_TRUE(text::is_token("latino:casi-2"));
  EXPECT_FALSE(text::is_token(""));
  EXPECT_FALSE(text::is_token("Casi"));
  EXPECT_FALSE(text::is_token("a b"));
  EXPECT_TRUE(text::is_tag("impf"));
  EXPECT_FALSE(text::is_tag("a:b"));
}

TEST(Text, SplitAndJoin) {
  EXPECT_EQ(text::split_list(" a, b ,,c "), (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_TRUE(text::split_list("").empty());
  auto ws = text::split_ws("  edge a  ->\tb ");
  ASSERT_EQ(ws.size(), 4u);
  EXPECT_EQ(ws[3], "b");
  EXPECT_EQ(text::split("a\t\tb", '\t').size(), 3u);
  EXPECT_EQ(text::join({"x", "y"}, ", "), "x, y");
  EXPECT_EQ(text::trim("\t x \r\n"), "x");
}

TEST(Text, Numbers) {
  EXPECT_EQ(text::parse_int("42"), 42);
  EXPECT_EQ(text::parse_int("-3"), -3);
  EXPECT_FALSE(text::parse_int("4.2"));
  EXPECT_FALSE(text::parse_int("99999999999999999999999"));
  EXPECT_DOUBLE_EQ(*text::parse_decimal("3.5"), 3.5);
  EXPECT_FALSE(text::parse_decimal("3,5"));
  EXPECT_FALSE(text::parse_decimal("nan"));
  EXPECT_EQ(text::format_decimal(3.5), "3.5");
  EXPECT_EQ(text::format_decimal(2.0), "2");
  EXPECT_EQ(text::format_decimal(0.1), "0.1");
  for (double v : {1.0 / 3.0, 1e-9, 123456.789})
    EXPECT_EQ(*text::parse_decimal(text::format_decimal(v)), v);
}

TEST(Text, Slugify) {
  EXPECT_EQ(text::slugify("Proposizione Causale"), "proposizione_causale");
  EXPECT_EQ(text::slugify("  Morfologia -- verbale! "), "morfologia_verbale");
  EXPECT_EQ(text::slugify("è"), "");
}

TEST(Text, DigestAndTime) {
  EXPECT_EQ(text::sha256_hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(text::iso8601(0), "1970-01-01T00:00:00Z");
  EXPECT_EQ(text::iso8601(1700000000), "2023-11-14T22:13:20Z");
}

TEST(Text, AtomicWrite) {
  auto dir = cgtest::scratch_dir("text");
  auto path = dir / "sub" / "f.txt";
  std::filesystem::create_directories(path.parent_path());
  text::write_file_atomic(path, "one");
  text::write_file_atomic(path, "two");
  EXPECT_EQ(text::read_file(path), "two");
  EXPECT_EQ(std::distance(std::filesystem::directory_iterator(path.parent_path()), {}), 1);
  try {
    text::read_file(dir / "missing");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.category(), ErrorCategory::Io);
  }
}
