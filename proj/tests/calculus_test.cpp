// Copyright 2026 The Clio Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <gtest/gtest.h>

#include "support.hpp"

namespace clio {
namespace {

std::string type_of(std::string_view src) { return typecheck(testing::parse_with_literals(src))->str(); }

TEST(Ground, EncodingIsTagLengthValue) {
  Bytes b = encode_ground(GroundValue::boolean(true));
  EXPECT_EQ(b, (Bytes{1, 0, 0, 0, 0, 0, 0, 0, 1, 1}));
  b = encode_ground(GroundValue::integer(-1));
  ASSERT_EQ(b.size(), 17u);
  EXPECT_EQ(b[0], ground_tag::kInt);
  EXPECT_EQ(b[16], 0xff);
}

TEST(Ground, RoundTripsRandomValues) {
  Rng rng(1);
  for (int i = 0; i < 500; ++i) {
    GroundValue v = testing::random_ground(rng);
    auto back = decode_ground_exact(encode_ground(v));
    ASSERT_TRUE(back);
    EXPECT_EQ(*back, v) << v.text();
  }
}

TEST(Ground, RejectsTruncationAndTrailingBytes) {
  Bytes b = encode_ground(GroundValue::pair(GroundValue::text("ab"), GroundValue::unit()));
  Bytes shorter(b.begin(), b.end() - 1);
  EXPECT_FALSE(decode_ground_exact(shorter));
  b.push_back(0);
  EXPECT_FALSE(decode_ground_exact(b));
  EXPECT_FALSE(decode_ground_exact(Bytes{9, 0, 0, 0, 0, 0, 0, 0, 0}));
}

TEST(Ground, LabelPayloadMustBeCanonical) {
  Bytes b{ground_tag::kLabel};
  const std::string text = "B ∨ A | True | True";
  append_u64be(b, text.size());
  b.insert(b.end(), text.begin(), text.end());
  EXPECT_FALSE(decode_ground_exact(b));
}

TEST(Parser, DoNotationDesugarsToBind) {
  TermPtr t = parse_term("x <- return 1; return x");
  ASSERT_TRUE(t->is<node::Bind>());
  EXPECT_TRUE(t->as<node::Bind>()->continuation->is<node::Lam>());
}

TEST(Parser, PrettyRoundTrips) {
  for (const auto& c : testing::ni_corpus()) {
    TermPtr t = parse_term(c.program);
    EXPECT_TRUE(structurally_equal(parse_term(pretty(t)), t)) << pretty(t);
  }
  TermPtr t = parse_term(read_file(testing::source_path("programs/case_study/preparer.clio")));
  EXPECT_TRUE(structurally_equal(parse_term(pretty(t)), t));
}

TEST(Parser, AsciiSyntax) {
  TermPtr a = parse_term("\\x : Int -> Int. x");
  TermPtr b = parse_term("λx : Int → Int. x");
  EXPECT_TRUE(structurally_equal(a, b));
  EXPECT_TRUE(structurally_equal(parse_term("label <A | True | True> 1"),
                                 parse_term("label ⟨A | True | True⟩ 1")));
  EXPECT_TRUE(structurally_equal(parse_term("1 < 2"), parse_term("(1 < 2)")));
}

TEST(Parser, RejectsInternalForms) {
  EXPECT_THROW(parse_term("LIO 1"), SyntaxError);
  EXPECT_THROW(parse_term("reset 1"), SyntaxError);
  EXPECT_THROW(parse_term("labeled ⟨A | True | True⟩ 1"), SyntaxError);
  EXPECT_NO_THROW(testing::parse_with_literals("labeled ⟨A | True | True⟩ 1"));
}

TEST(Parser, ReportsPosition) {
  try {
    parse_term("return (1,\n  )");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Parser, Types) {
  EXPECT_EQ(parse_type("Labeled (Int, Text) -> CLIO Unit")->str(), "Labeled (Int, Text) -> CLIO Unit");
  EXPECT_THROW(parse_type("Labeled (Int -> Int)"), SyntaxError);
}

TEST(Typecheck, Basics) {
  EXPECT_EQ(type_of("1 + 2"), "Int");
  EXPECT_EQ(type_of("\"a\" ++ \"b\""), "Text");
  EXPECT_EQ(type_of("return (1, true)"), "CLIO (Int, Bool)");
  EXPECT_EQ(type_of("label ⟨A | True | True⟩ 1"), "CLIO Labeled Int");
  EXPECT_EQ(type_of("x <- label ⟨A | True | True⟩ 1; unlabel x"), "CLIO Int");
  EXPECT_EQ(type_of("toLabeled ⟨A | True | True⟩ (return \"s\")"), "CLIO Labeled Text");
  EXPECT_EQ(type_of("getLabel"), "CLIO Label");
  EXPECT_EQ(type_of("fetch[Int] \"k\" (labeled ⟨A | True | True⟩ 0)"), "CLIO Labeled Int");
  EXPECT_EQ(type_of("fix (λf : Int -> Int. λn : Int. if n == 0 then 1 else n * f (n - 1))"), "Int -> Int");
}

TEST(Typecheck, CaseStudyPrograms) {
  for (const char* f : {"customer", "preparer", "irs"}) {
    TermPtr t = parse_term(read_file(testing::source_path(std::string("programs/case_study/") + f + ".clio")));
    TypePtr ty = typecheck(t);
    EXPECT_EQ(ty->kind(), Type::Kind::kClio) << f;
  }
}

TEST(Typecheck, Errors) {
  EXPECT_THROW(type_of("1 + true"), TypeError);
  EXPECT_THROW(type_of("if 1 then 2 else 3"), TypeError);
  EXPECT_THROW(type_of("store \"k\" 1"), TypeError);
  EXPECT_THROW(type_of("label ⟨A | True | True⟩ (λx : Int. x)"), TypeError);
  EXPECT_THROW(type_of("fetch[Int] \"k\" (labeled ⟨A | True | True⟩ true)"), TypeError);
  EXPECT_THROW(type_of("y"), TypeError);
  EXPECT_THROW(type_of("unlabel 3"), TypeError);
}

TEST(Typecheck, ErrorNamesSubterm) {
  try {
    type_of("return (1 + true)");
    FAIL();
  } catch (const TypeError& e) {
    EXPECT_NE(std::string(e.what()).find("true"), std::string::npos) << e.what();
  }
}

TEST(Substitute, ShadowingIsRespected) {
  TermPtr body = parse_term("λx : Int. x + y");
  TermPtr r = substitute(body, "x", t::integer(5));
  EXPECT_TRUE(structurally_equal(r, body));
  TermPtr r2 = substitute(body, "y", t::integer(5));
  EXPECT_TRUE(structurally_equal(r2, parse_term("λx : Int. x + 5")));
}

}  // namespace
}  // namespace clio
